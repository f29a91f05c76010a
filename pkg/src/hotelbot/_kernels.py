"""Hot loops: worker moves, generative transitions, particle updates, search.

Everything here is numba-compiled unless HOTELBOT_NO_NUMBA is set, in which
case the same functions run as plain python (see _rng.njit). States are held
as int64 bitmasks and actions as flat indices so both paths stay allocation
free inside the loops:

    action index a in [0, 3P]:  a < P        ObserveInventory(a)
                                a < 2P       ObserveWorkspace(a - P)
                                a < 3P       Restock(a - 2P)
                                a == 3P      Wait

Observations collapse to a single outcome bit (present/assembled = 1); the
wrappers in sim.py re-inflate them into Observation values.
"""

from __future__ import annotations

import numpy as np

from ._rng import njit, rng_below, rng_uniform
from .domain import (
    REW_ASSEMBLED,
    REW_BLOCKED,
    REW_COMPLETED,
    REW_OBSERVE,
    REW_RESTOCK_OTHER,
    REW_RESTOCK_REDUNDANT,
    REW_RESTOCK_USEFUL,
    REW_WAIT,
)

# Worker event codes shared with worker.py.
EV_PAUSED = 0
EV_REMOVED = 1
EV_ASSEMBLED = 2
EV_BLOCKED = 3
EV_COMPLETED = 4  # assembled the final required part this step
EV_NONE = 5  # no worker move (absorbed particle)


@njit(cache=True)
def pick_bit(mask, n_parts, state):
    """Uniformly random set-bit index of a nonzero n_parts-wide mask."""
    count = 0
    for p in range(n_parts):
        if (mask >> p) & 1:
            count += 1
    k = rng_below(state, count)
    for p in range(n_parts):
        if (mask >> p) & 1:
            if k == 0:
                return p
            k -= 1
    return -1  # unreachable on nonzero mask


@njit(cache=True)
def worker_kernel(avail, asm, intent, prm, state):
    """One worker move. Returns (event_code, part, avail', asm', reward_delta).

    Branch priority: pause, fix a wrong part, mistake, progress, blocked.
    Caller must not pass a terminal state.
    """
    req = prm.required[intent]
    if rng_uniform(state) < prm.p_pause:
        return EV_PAUSED, -1, avail, asm, 0.0
    wrong = asm & ~req
    if wrong != 0:
        p = pick_bit(wrong, prm.n_parts, state)
        bit = 1 << p
        return EV_REMOVED, p, avail | bit, asm & ~bit, 0.0
    nonreq_avail = avail & ~req
    if nonreq_avail != 0:
        denom = 1.0 - prm.p_pause
        p_mistake = prm.p_mistake / denom if denom > 0.0 else 1.0
        if rng_uniform(state) < p_mistake:
            p = pick_bit(nonreq_avail, prm.n_parts, state)
            bit = 1 << p
            return EV_ASSEMBLED, p, avail & ~bit, asm | bit, 0.0
    needed_avail = req & ~asm & avail
    if needed_avail != 0:
        p = pick_bit(needed_avail, prm.n_parts, state)
        bit = 1 << p
        asm2 = asm | bit
        reward = prm.rewards[REW_ASSEMBLED]
        if asm2 == req:
            return EV_COMPLETED, p, avail & ~bit, asm2, reward + prm.rewards[REW_COMPLETED]
        return EV_ASSEMBLED, p, avail & ~bit, asm2, reward
    return EV_BLOCKED, -1, avail, asm, prm.rewards[REW_BLOCKED]


@njit(cache=True)
def robot_apply(avail, asm, intent, a, prm):
    """Apply a robot action to the state. Returns (avail', robot_reward)."""
    n = prm.n_parts
    if a < 2 * n:
        return avail, prm.rewards[REW_OBSERVE]
    if a == 3 * n:
        return avail, prm.rewards[REW_WAIT]
    p = a - 2 * n
    bit = 1 << p
    if (avail | asm) & bit:
        # already on the table or built in: nothing changes
        return avail, prm.rewards[REW_RESTOCK_REDUNDANT]
    if (prm.required[intent] >> p) & 1:
        return avail | bit, prm.rewards[REW_RESTOCK_USEFUL]
    return avail | bit, prm.rewards[REW_RESTOCK_OTHER]


@njit(cache=True)
def sample_obs_bit(avail, asm, a, prm, state):
    """Noisy outcome bit for an action taken in the post-robot state."""
    n = prm.n_parts
    if a < n:
        truth = (avail >> a) & 1
    elif a < 2 * n:
        truth = (asm >> (a - n)) & 1
    else:
        return 0
    if rng_uniform(state) < prm.alpha:
        return int(truth)
    return int(1 - truth)


@njit(cache=True)
def likelihood_bit(avail, asm, a, obs_bit, prm):
    """P(outcome bit | post-robot state, action)."""
    n = prm.n_parts
    if a < n:
        truth = (avail >> a) & 1
    elif a < 2 * n:
        truth = (asm >> (a - n)) & 1
    else:
        return 1.0
    if obs_bit == truth:
        return prm.alpha
    return 1.0 - prm.alpha


@njit(cache=True)
def transition(avail, asm, intent, step, a, prm, state):
    """Full generative step G(s, a): robot action, observation, worker move.

    Returns (avail', asm', step', obs_bit, reward, event_code, event_part,
    terminal). Caller must not pass a terminal state.
    """
    avail, reward = robot_apply(avail, asm, intent, a, prm)
    obs_bit = sample_obs_bit(avail, asm, a, prm, state)
    code, part, avail, asm, dr = worker_kernel(avail, asm, intent, prm, state)
    reward += dr
    step += 1
    terminal = asm == prm.required[intent] or step >= prm.horizon
    assert prm.r_min - 1e-9 <= reward <= prm.r_max + 1e-9
    return avail, asm, step, obs_bit, reward, code, part, terminal


@njit(cache=True)
def action_score(avail, asm, intent, a, prm):
    """Relevance of an action in a concrete state; in (0, 1]."""
    n = prm.n_parts
    if a == 3 * n:
        return 0.1
    req = prm.required[intent]
    if a < 2 * n:
        p = a if a < n else a - n
        if (req >> p) & 1 and not (asm >> p) & 1:
            return 0.3
        return 0.05
    p = a - 2 * n
    if not (avail >> p) & 1 and (req >> p) & 1 and not (asm >> p) & 1:
        return 1.0
    return 0.05


@njit(cache=True)
def sample_relevant_action(avail, asm, intent, prm, state):
    """Draw an action index with probability proportional to its relevance."""
    n_actions = 3 * prm.n_parts + 1
    total = 0.0
    for a in range(n_actions):
        total += action_score(avail, asm, intent, a, prm)
    u = rng_uniform(state) * total
    acc = 0.0
    for a in range(n_actions):
        acc += action_score(avail, asm, intent, a, prm)
        if u < acc:
            return a
    return n_actions - 1


@njit(cache=True)
def rollout_kernel(avail, asm, intent, step, depth_limit, gamma, variant, prm, state):
    """Discounted return of a random playout (uniform or relevance-weighted)."""
    total = 0.0
    disc = 1.0
    for _ in range(depth_limit):
        if asm == prm.required[intent] or step >= prm.horizon:
            break
        if variant == 0:
            a = rng_below(state, 3 * prm.n_parts + 1)
        else:
            a = sample_relevant_action(avail, asm, intent, prm, state)
        avail, asm, step, _, r, _, _, terminal = transition(
            avail, asm, intent, step, a, prm, state
        )
        total += disc * r
        disc *= gamma
        if terminal:
            break
    return total


@njit(cache=True)
def select_action(node, n_visits, n_act, q_val, n_init, ucb_c, state):
    """UCB1 action choice: untried actions first, random tie-breaking."""
    n_actions = n_act.shape[1]
    untried = 0
    pick = -1
    for a in range(n_actions):
        if n_act[node, a] == n_init:
            untried += 1
            if rng_below(state, untried) == 0:
                pick = a
    if untried > 0:
        return pick
    log_n = np.log(float(n_visits[node]))
    best = -1e300
    ties = 0
    for a in range(n_actions):
        score = q_val[node, a] + ucb_c * np.sqrt(log_n / n_act[node, a])
        if score > best:
            best = score
            ties = 1
            pick = a
        elif score == best:
            ties += 1
            if rng_below(state, ties) == 0:
                pick = a
    return pick


@njit(cache=True)
def search_kernel(
    bel_avail,
    bel_asm,
    bel_intent,
    bel_cumw,
    bel_step,
    prm,
    gamma,
    ucb_c,
    max_depth,
    n_init,
    variant,
    budget,
    q_bound,
    n_visits,
    n_act,
    q_val,
    child,
    node_count,
    root,
    state,
):
    """Run `budget` tree simulations in place (POMCP-style).

    Each simulation samples a particle, descends by UCB1 over (action,
    outcome-bit) edges, expands at most one new node, evaluates it with a
    rollout and backs the discounted return up the visited path. Caller
    guarantees node capacity >= node_count[0] + budget.
    """
    n_particles = bel_avail.shape[0]
    n_actions = n_act.shape[1]
    path_node = np.empty(max_depth, np.int64)
    path_act = np.empty(max_depth, np.int64)
    path_rew = np.empty(max_depth, np.float64)

    for _ in range(budget):
        u = rng_uniform(state)
        i = np.searchsorted(bel_cumw, u)
        if i >= n_particles:
            i = n_particles - 1
        avail = bel_avail[i]
        asm = bel_asm[i]
        intent = bel_intent[i]
        step = bel_step

        node = root
        depth = 0
        value = 0.0
        while True:
            if asm == prm.required[intent] or step >= prm.horizon or depth >= max_depth:
                break
            a = select_action(node, n_visits, n_act, q_val, n_init, ucb_c, state)
            avail, asm, step, obs_bit, r, _, _, terminal = transition(
                avail, asm, intent, step, a, prm, state
            )
            path_node[depth] = node
            path_act[depth] = a
            path_rew[depth] = r
            depth += 1
            if terminal:
                break
            nxt = child[node, a, obs_bit]
            if nxt < 0:
                nxt = node_count[0]
                node_count[0] += 1
                n_visits[nxt] = 0
                n_act[nxt, :] = n_init
                q_val[nxt, :] = 0.0
                child[nxt, :, :] = -1
                child[node, a, obs_bit] = nxt
                value = rollout_kernel(
                    avail, asm, intent, step, max_depth - depth, gamma, variant, prm, state
                )
                break
            node = nxt

        ret = value
        for d in range(depth - 1, -1, -1):
            ret = path_rew[d] + gamma * ret
            nd = path_node[d]
            a = path_act[d]
            n_visits[nd] += 1
            n_act[nd, a] += 1
            q_val[nd, a] += (ret - q_val[nd, a]) / n_act[nd, a]
            assert -q_bound <= q_val[nd, a] <= q_bound


@njit(cache=True)
def compact_tree(
    old_root,
    node_count,
    n_visits,
    n_act,
    q_val,
    child,
    new_visits,
    new_act,
    new_q,
    new_child,
):
    """Copy the subtree under old_root into the new arrays, renumbered from 0.

    Returns the number of live nodes; used to promote an (action, outcome)
    child to the root between decisions without keeping dead branches.
    """
    mapping = np.full(node_count, -1, np.int64)
    queue = np.empty(node_count, np.int64)
    mapping[old_root] = 0
    queue[0] = old_root
    head = 0
    tail = 1
    n_actions = n_act.shape[1]
    while head < tail:
        old = queue[head]
        new = mapping[old]
        head += 1
        new_visits[new] = n_visits[old]
        new_act[new, :] = n_act[old, :]
        new_q[new, :] = q_val[old, :]
        for a in range(n_actions):
            for b in range(2):
                c = child[old, a, b]
                if c >= 0:
                    if mapping[c] < 0:
                        mapping[c] = tail
                        queue[tail] = c
                        tail += 1
                    new_child[new, a, b] = mapping[c]
                else:
                    new_child[new, a, b] = -1
    return tail


@njit(cache=True)
def init_particles_kernel(probs, n_types, fixed_intent, avail, asm, intent, state):
    """Draw i.i.d. prior particles into the given arrays."""
    n_parts = probs.shape[0]
    for i in range(avail.shape[0]):
        mask = 0
        for p in range(n_parts):
            if rng_uniform(state) < probs[p]:
                mask |= 1 << p
        avail[i] = mask
        asm[i] = 0
        if fixed_intent >= 0:
            intent[i] = fixed_intent
        else:
            intent[i] = rng_below(state, n_types)


@njit(cache=True)
def update_particles_kernel(avail, asm, intent, w, a, obs_bit, step, prm, state):
    """One filtering step over all particles, in place.

    Robot action, likelihood reweighting against the emitted outcome bit,
    then a sampled worker move; particles that already completed their hotel
    are absorbed (no worker move). Returns the pre-normalization total weight.
    """
    total = 0.0
    for i in range(avail.shape[0]):
        av = avail[i]
        am = asm[i]
        it = intent[i]
        av, _ = robot_apply(av, am, it, a, prm)
        w[i] *= likelihood_bit(av, am, a, obs_bit, prm)
        if am != prm.required[it] and step < prm.horizon:
            _, _, av, am, _ = worker_kernel(av, am, it, prm, state)
        avail[i] = av
        asm[i] = am
        total += w[i]
    return total


@njit(cache=True)
def systematic_resample_kernel(w, idx, state):
    """Systematic resampling of normalized weights into index array idx."""
    n = w.shape[0]
    u0 = rng_uniform(state) / n
    acc = w[0]
    j = 0
    for i in range(n):
        u = u0 + i / n
        while u > acc and j < n - 1:
            j += 1
            acc += w[j]
        idx[i] = j


@njit(cache=True)
def reinvigorate_kernel(avail, asm, intent, n_parts, n_types, state):
    """Mutate particles after deprivation: flip one availability bit and
    occasionally redraw the hotel type."""
    for i in range(avail.shape[0]):
        p = rng_below(state, n_parts)
        if not (asm[i] >> p) & 1:
            avail[i] ^= 1 << p
        if rng_uniform(state) < 0.1:
            intent[i] = rng_below(state, n_types)
