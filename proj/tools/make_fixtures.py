"""Writes the high-girth fixture graphs used by the girth experiment."""
import itertools
import pathlib
import sys

import networkx as nx


def gf4():
    # elements 0,1,w,w^2 as 0..3; addition is xor on the basis (1, w)
    mul = [[0] * 4 for _ in range(4)]
    logs = {1: 0, 2: 1, 3: 2}
    for a in range(1, 4):
        for b in range(1, 4):
            mul[a][b] = [1, 2, 3][(logs[a] + logs[b]) % 3]
    return (lambda a, b: a ^ b), (lambda a, b: mul[a][b]), 4


def gfp(p):
    return (lambda a, b: (a + b) % p), (lambda a, b: (a * b) % p), p


def projective_points(q, mul):
    points = []
    for v in itertools.product(range(q), repeat=3):
        if not any(v):
            continue
        lead = next(x for x in v if x)
        # normalise so the first nonzero coordinate is 1
        inv = next(c for c in range(1, q) if mul(lead, c) == 1)
        w = tuple(mul(inv, x) for x in v)
        if w not in points:
            points.append(w)
    return points


def incidence_graph(field):
    add, mul, q = field
    pts = projective_points(q, mul)
    g = nx.Graph()
    n = len(pts)
    g.add_nodes_from(range(2 * n))
    for i, p in enumerate(pts):
        for j, line in enumerate(pts):
            dot = 0
            for a, b in zip(p, line):
                dot = add(dot, mul(a, b))
            if dot == 0:
                g.add_edge(i, n + j)
    return g


def write(g, path, comment):
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    edges = sorted(tuple(sorted(e)) for e in g.edges())
    with open(path, "w") as f:
        f.write(f"# {comment}\n")
        f.write(f"{g.number_of_nodes()} {len(edges)}\n")
        for a, b in edges:
            f.write(f"{a} {b}\n")
    print(path, g.number_of_nodes(), len(edges), "girth", nx.girth(g),
          "min degree", min(d for _, d in g.degree()))


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
    out.mkdir(parents=True, exist_ok=True)
    write(incidence_graph(gfp(3)), out / "pg23_incidence.txt", "incidence graph of PG(2,3)")
    write(incidence_graph(gf4()), out / "pg24_incidence.txt", "incidence graph of PG(2,4)")
    write(nx.hoffman_singleton_graph(), out / "hoffman_singleton.txt", "Hoffman-Singleton graph")


if __name__ == "__main__":
    main()
