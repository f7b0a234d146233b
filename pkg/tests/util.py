"""Independent reference oracles used to cross-check the package.

Everything here is deliberately reimplemented from first principles with
plain enumeration, so a test never validates a function against itself.
"""

import itertools
import random

from picod.instance import Instance, validate_instance


# ---------------------------------------------------------------------------
# finite-field brute force


def vec_add(u, v, q):
    return tuple((a + b) % q for a, b in zip(u, v))


def vec_scale(c, v, q):
    return tuple((c * a) % q for a in v)


def span_vectors(rows, q):
    """Every vector in the row span, by closing under addition and scaling."""
    m = len(rows[0]) if rows else 0
    seen = {tuple([0] * m)}
    frontier = list(seen)
    while frontier:
        base = frontier.pop()
        for row in rows:
            for c in range(1, q):
                cand = vec_add(base, vec_scale(c, row, q), q)
                if cand not in seen:
                    seen.add(cand)
                    frontier.append(cand)
    return seen


def brute_in_span(vector, rows, q):
    return tuple(vector) in span_vectors(list(rows), q)


def brute_closure(q, rows, m, known):
    """Messages recoverable from the rows plus the known messages.

    Fixpoint of: d is recoverable when the unit vector e_d lies in the span
    of the code rows and the unit vectors of everything already known.
    """
    have = set(known)
    while True:
        basis = [tuple(rows[i]) for i in range(len(rows))]
        for k in sorted(have):
            basis.append(tuple(1 if j == k else 0 for j in range(m)))
        vectors = span_vectors(basis, q) if basis else {tuple([0] * m)}
        grew = False
        for d in range(m):
            if d in have:
                continue
            unit = tuple(1 if j == d else 0 for j in range(m))
            if unit in vectors:
                have.add(d)
                grew = True
        if not grew:
            return frozenset(have)


def brute_code_valid(q, rows, inst):
    """A user is served when it can recover >= t messages outside its set."""
    for a in inst.users:
        got = brute_closure(q, rows, inst.m, a)
        if len(got - a) < inst.t:
            return False
    return True


def brute_min_linear_ell(inst, q, ell_max):
    """Smallest row count over every matrix with entries in GF(q), or None."""
    cells = list(range(q))
    for ell in range(0, ell_max + 1):
        for flat in itertools.product(cells, repeat=ell * inst.m):
            rows = [
                tuple(flat[r * inst.m : (r + 1) * inst.m]) for r in range(ell)
            ]
            if brute_code_valid(q, rows, inst):
                return ell
    return None


# ---------------------------------------------------------------------------
# acyclic-set brute force


def brute_mais(inst, assignment):
    """Largest acyclic set of unicast entries with distinct desired messages.

    Builds the digraph explicitly for every candidate subset and checks
    acyclicity with Kahn's algorithm.
    """
    entries = []
    for a, d in zip(inst.users, assignment):
        for x in sorted(d):
            entries.append((a, x))
    n = len(entries)
    # no subset larger than the number of distinct desired messages can work
    distinct = len({x for _, x in entries})
    for size in range(min(n, distinct), 0, -1):
        for sub in itertools.combinations(range(n), size):
            msgs = [entries[i][1] for i in sub]
            if len(set(msgs)) != size:
                continue
            indeg = {i: 0 for i in sub}
            adj = {i: [] for i in sub}
            for i in sub:
                for j in sub:
                    if i != j and entries[j][1] in entries[i][0]:
                        adj[i].append(j)
                        indeg[j] += 1
            stack = [i for i in sub if indeg[i] == 0]
            seen = 0
            while stack:
                v = stack.pop()
                seen += 1
                for w in adj[v]:
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        stack.append(w)
            if seen == size:
                return size
    return 0


def brute_min_mais(inst, assignments):
    return min(brute_mais(inst, d) for d in assignments)


# ---------------------------------------------------------------------------
# partition brute force


def iter_set_partitions(items):
    """Every partition of items into non-empty unordered parts."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for partial in iter_set_partitions(rest):
        yield [[head]] + [list(p) for p in partial]
        for i in range(len(partial)):
            grown = [list(p) for p in partial]
            grown[i].append(head)
            yield grown


def brute_best_partition_cost(m, t, sizes):
    """Minimum total cost over every set partition, parts costed by
    min(m - min(part), max(part) + t)."""
    best = None
    for parts in iter_set_partitions(sorted(sizes)):
        total = sum(min(m - min(p), max(p) + t) for p in parts)
        if best is None or total < best:
            best = total
    return best


# ---------------------------------------------------------------------------
# exact-cover brute force


def brute_exact_cover(n_vertices, edges):
    """Exact cover by label subset, via exhaustive subset enumeration.

    Returns a sorted label tuple or None.  Edges is a list of vertex sets.
    """
    labels = list(range(len(edges)))
    full = frozenset(range(n_vertices))
    for r in range(0, len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            union = set()
            total = 0
            for j in combo:
                union |= edges[j]
                total += len(edges[j])
            if total == n_vertices and union == full:
                return tuple(combo)
    return None


# ---------------------------------------------------------------------------
# intersection-family brute force


def brute_family_witness(blocks, ground_size):
    """Smallest non-empty index set P with |intersection over P| = |P| - 1."""
    idx = list(range(len(blocks)))
    for r in range(1, len(blocks) + 1):
        for combo in itertools.combinations(idx, r):
            inter = frozenset(range(ground_size))
            for k in combo:
                inter &= blocks[k]
            if len(inter) == r - 1:
                return combo
    return None


# ---------------------------------------------------------------------------
# random generators


def random_instance(rng, m_max=6, n_max=10, t=1):
    """A valid instance with arbitrary (possibly repeated) side-info sets."""
    m = rng.randint(max(2, t + 1), m_max)
    n = rng.randint(1, n_max)
    users = []
    for _ in range(n):
        size = rng.randint(0, m - t)
        users.append(frozenset(rng.sample(range(m), size)))
    inst = Instance(m=m, t=t, users=tuple(users))
    assert validate_instance(inst) is None
    return inst


def random_arc_instance(rng, n_max=30, m_max=12):
    """An instance whose topology is circular-arc in the identity order.

    Draws random arcs until every position is missed by at least one arc,
    then gives user i exactly the messages whose arc avoids position i.
    """
    for _ in range(1000):
        n = rng.randint(3, n_max)
        m = rng.randint(2, m_max)
        arcs = []
        for _ in range(m):
            start = rng.randrange(n)
            length = rng.randint(1, n - 1)
            arcs.append(frozenset((start + k) % n for k in range(length)))
        covered = set()
        for arc in arcs:
            covered |= arc
        if len(covered) < n:
            continue
        users = tuple(
            frozenset(j for j in range(m) if i not in arcs[j]) for i in range(n)
        )
        inst = Instance(m=m, t=1, users=users)
        assert validate_instance(inst) is None
        return inst
    raise AssertionError("no covered arc family found in 1000 draws")


def random_assignment(rng, inst):
    out = []
    for a in inst.users:
        pool = sorted(set(range(inst.m)) - a)
        out.append(frozenset(rng.sample(pool, inst.t)))
    return tuple(out)


def seeded(seed):
    return random.Random(seed)
