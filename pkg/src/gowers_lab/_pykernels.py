"""Pure-Python kernels; reference semantics for the compiled twins in ``_ckernels``."""

FOUND = 0
EXHAUSTED = 1
BUDGET = 2


def _satisfied(c, colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
    acc = -1
    for p in range(cand_ptr[c], cand_ptr[c + 1]):
        f = cand_idx[p]
        mask = 0
        for q in range(ball_ptr[f], ball_ptr[f + 1]):
            mask |= 1 << colors[ball_idx[q]]
        acc &= mask
        if not acc:
            return False
    return True


def search_bad_coloring(n_elems, r, ball_ptr, ball_idx, cand_ptr, cand_idx,
                        trig_ptr, trig_cand, budget, prefix=()):
    """Depth-first search for a coloring under which no candidate is satisfied.

    A candidate is satisfied when some color lies in the ball of every member.
    Colorings are enumerated as restricted-growth strings, so each class under
    color relabeling is visited once.  The first ``len(prefix)`` colors are
    fixed, which splits the space into independent subproblems.  Returns
    ``(status, colors, nodes)``.
    """
    if n_elems == 0:
        return FOUND, [], 0
    colors = [-1] * n_elems
    prevmax = [-1] * (n_elems + 1)
    nodes = 0
    fixed = len(prefix)
    for e in range(fixed):
        colors[e] = prefix[e]
        prevmax[e + 1] = max(prevmax[e], prefix[e])
        for q in range(trig_ptr[e], trig_ptr[e + 1]):
            if _satisfied(trig_cand[q], colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
                return EXHAUSTED, None, nodes
    if fixed == n_elems:
        return FOUND, list(colors), nodes
    e = fixed
    while True:
        c = colors[e] + 1
        limit = prevmax[e] + 1
        if limit > r - 1:
            limit = r - 1
        if c > limit:
            colors[e] = -1
            e -= 1
            if e < fixed:
                return EXHAUSTED, None, nodes
            continue
        colors[e] = c
        nodes += 1
        if budget and nodes > budget:
            return BUDGET, None, nodes
        dead = False
        for q in range(trig_ptr[e], trig_ptr[e + 1]):
            if _satisfied(trig_cand[q], colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
                dead = True
                break
        if dead:
            continue
        if e == n_elems - 1:
            return FOUND, list(colors), nodes
        prevmax[e + 1] = prevmax[e] if prevmax[e] > c else c
        e += 1
        colors[e] = -1


def first_satisfied(colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
    """Index of the first candidate satisfied under a full coloring, or -1."""
    for c in range(len(cand_ptr) - 1):
        if _satisfied(c, colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
            return c
    return -1
