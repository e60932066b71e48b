"""Brute-force reference computations by walking every element of a module."""
import itertools

from PairOps.algebra.flmod import FLModule, Submodule


def elements(M: FLModule):
    return list(itertools.product(M.field.elements(), repeat=M.dim))


def element_set(S: Submodule) -> frozenset:
    return frozenset(S.space.elements())


def act(M: FLModule, r, u):
    return M.act(r).apply(u)


def brute_submodules(M: FLModule) -> set[frozenset]:
    """Every subset of M closed under addition, scalars and the ring action, found from all spans."""
    found = set()
    everything = elements(M)
    for k in range(M.dim + 1):
        for gens in itertools.combinations(everything, k):
            closed = {tuple([M.field.zero] * M.dim)}
            frontier = list(gens)
            while frontier:
                v = frontier.pop()
                if v in closed:
                    continue
                closed.add(v)
                candidates = [tuple((a + b) % M.field.char for a, b in zip(v, w)) for w in list(closed)]
                candidates += [A.apply(v) for A in M.actions]
                frontier.extend(c for c in candidates if c not in closed)
            found.add(frozenset(closed))
    return found


def brute_colon(L: Submodule, M: FLModule, J: Submodule) -> frozenset:
    """{u in M : j u in L for every j in J}, by testing every u against every element of J."""
    members = element_set(L)
    js = list(J.space.elements())
    return frozenset(u for u in elements(M) if all(act(M, j, u) in members for j in js))


def brute_scale(J: Submodule, L: Submodule, M: FLModule) -> frozenset:
    """J L as the additive closure of every product j u."""
    p = M.field.char
    products = {act(M, j, u) for j in J.space.elements() for u in L.space.elements()}
    closed = set(products)
    changed = True
    while changed:
        changed = False
        for a in list(closed):
            for b in list(closed):
                s = tuple((x + y) % p for x, y in zip(a, b))
                if s not in closed:
                    closed.add(s)
                    changed = True
    return frozenset(closed)


def brute_annihilator(N: Submodule) -> frozenset:
    R = N.parent.ring
    M = N.parent
    members = list(N.space.elements())
    zero = tuple([M.field.zero] * M.dim)
    return frozenset(r for r in itertools.product(R.field.elements(), repeat=R.dim)
                     if all(act(M, r, u) == zero for u in members))
