"""Regenerate the graph6 fixture files under tests/fixtures/.

Three files:
  small_graphs_n_le_5.g6   one representative per isomorphism class, n <= 5
  roundtrip_n8_10.g6       random graphs on 8..10 vertices, encoded by
                           networkx so the parser is exercised against an
                           independent writer
  scan_stream_100k.g6      large mixed stream on 5..7 vertices for the
                           scan determinism run

Everything is seeded; reruns produce byte-identical files.
"""

import argparse
import random
from itertools import permutations
from pathlib import Path

import networkx as nx

from isk4lab.graphs import Graph, code_to_graph6

FIXDIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def canonical_code(g: Graph) -> int:
    best = None
    for perm in permutations(range(g.n)):
        h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
        c = h.code()
        if best is None or c < best:
            best = c
    return best


def iso_classes_up_to(max_n: int) -> list[str]:
    lines = []
    for n in range(1, max_n + 1):
        seen = set()
        for code in range(1 << (n * (n - 1) // 2)):
            seen.add(canonical_code(Graph.from_code(n, code)))
        lines.extend(code_to_graph6(n, c) for c in sorted(seen))
    return lines


def random_nx_lines(rng: random.Random, count: int, sizes: list[int]) -> list[str]:
    lines = []
    for _ in range(count):
        n = rng.choice(sizes)
        g = nx.gnp_random_graph(n, rng.uniform(0.2, 0.8), seed=rng.randrange(2**31))
        lines.append(nx.to_graph6_bytes(g, header=False).decode().strip())
    return lines


def random_code_lines(rng: random.Random, count: int, sizes: list[int]) -> list[str]:
    lines = []
    for _ in range(count):
        n = rng.choice(sizes)
        lines.append(code_to_graph6(n, rng.getrandbits(n * (n - 1) // 2)))
    return lines


def write(path: Path, lines: list[str]):
    path.write_text("".join(line + "\n" for line in lines))
    print(f"{path.name}: {len(lines)} lines")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=271828)
    ap.add_argument("--stream-size", type=int, default=100_000)
    ap.add_argument("--roundtrip-size", type=int, default=10_000)
    args = ap.parse_args()

    FIXDIR.mkdir(parents=True, exist_ok=True)
    write(FIXDIR / "small_graphs_n_le_5.g6", iso_classes_up_to(5))

    rng = random.Random(args.seed)
    write(FIXDIR / "roundtrip_n8_10.g6",
          random_nx_lines(rng, args.roundtrip_size, [8, 9, 10]))
    write(FIXDIR / "scan_stream_100k.g6",
          random_code_lines(rng, args.stream_size, [5, 6, 7]))


if __name__ == "__main__":
    main()
