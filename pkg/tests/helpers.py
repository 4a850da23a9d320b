"""Independent oracles shared by the test modules."""

from plusctl.words import Word


def random_word(rng, n, max_len=12):
    letters = [rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(0, max_len))]
    return Word(letters)


def perm_closure(gens):
    """All products of the given permutations (tuples), by breadth-first closure."""
    identity = tuple(range(len(gens[0])))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(len(p)))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def sympy_invariants(matrix):
    """Nonzero invariant factors via sympy's Smith normal form."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if not matrix or not matrix[0]:
        return []
    snf = smith_normal_form(Matrix(matrix), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    return sorted(d for d in diag if d)
