"""Shared generators for randomized suites: small random ribbon graphs."""

from surfhom.ribbon import RibbonGraph


def random_ribbon_graph(rng, max_edges=8, min_edges=2, vertices=None):
    """A random connected closed ribbon graph.

    Built from a random spanning tree plus random extra edges, with a
    shuffled rotation at every vertex.
    """
    while True:
        V = vertices if vertices is not None else rng.randrange(1, 5)
        E = rng.randrange(max(min_edges, V - 1), max_edges + 1)
        if E < V - 1 or (V == 1 and E == 0):
            continue
        darts_at = [[] for _ in range(V)]
        twin = [None] * (2 * E)
        nd = 0

        def new_edge(u, v):
            nonlocal nd
            a, b = nd, nd + 1
            twin[a], twin[b] = b, a
            darts_at[u].append(a)
            darts_at[v].append(b)
            nd += 2

        order = list(range(1, V))
        rng.shuffle(order)
        for i, v in enumerate(order):
            new_edge(rng.choice([0] + order[:i]), v)
        for _ in range(E - (V - 1)):
            new_edge(rng.randrange(V), rng.randrange(V))
        for lst in darts_at:
            rng.shuffle(lst)
        try:
            return RibbonGraph(tuple(tuple(l) for l in darts_at), tuple(twin))
        except ValueError:
            continue
