// Input-validation errors; the error name is embedded in the message so
// callers that only surface message strings still identify the failure.

export class EmptyCsv extends Error {
  constructor(detail: string) {
    super(`EmptyCsv: ${detail}`);
    this.name = "EmptyCsv";
  }
}

export class MissingColumn extends Error {
  constructor(column: string) {
    super(`MissingColumn: CSV header lacks required column '${column}'`);
    this.name = "MissingColumn";
  }
}

export class MalformedLine extends Error {
  constructor(lineNo: number, detail: string) {
    super(`MalformedLine: line ${lineNo}: ${detail}`);
    this.name = "MalformedLine";
  }
}
