#!/usr/bin/env python3
"""Generate a jittered grid road network plus a trip table.

Writes nodes.csv, edges.csv and agents.csv into --out. Trips are filtered
so every OD pair admits plenty of distinct descending-potential paths,
which keeps route sampling well clear of exhaustion.
"""

import argparse
import heapq
import math
import random


def build_grid(rng, cols, rows, spacing):
    nodes = []
    for r in range(rows):
        for c in range(cols):
            x = c * spacing + rng.uniform(-10.0, 10.0)
            y = r * spacing + rng.uniform(-10.0, 10.0)
            nodes.append((f"n{r * cols + c}", round(x, 1), round(y, 1)))

    edges = []

    def add_pair(i, j):
        xi, yi = nodes[i][1], nodes[i][2]
        xj, yj = nodes[j][1], nodes[j][2]
        length = round(math.dist((xi, yi), (xj, yj)), 1)
        for a, b in ((i, j), (j, i)):
            speed = round(rng.uniform(8.0, 14.0), 1)
            cap = round(rng.uniform(0.4, 0.9), 2)
            edges.append((f"e{len(edges)}", nodes[a][0], nodes[b][0],
                          length, speed, cap))

    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                add_pair(i, i + 1)
            if r + 1 < rows:
                add_pair(i, i + cols)
    return nodes, edges


def shortest_times_to(edges, n_nodes, node_index, sink):
    """Free-flow time from every node to sink (Dijkstra on reversed arcs)."""
    into = [[] for _ in range(n_nodes)]
    for _, a, b, length, speed, _ in edges:
        into[node_index[b]].append((node_index[a], length / speed))
    dist = [math.inf] * n_nodes
    dist[sink] = 0.0
    heap = [(0.0, sink)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u, w in into[v]:
            nd = d + w
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def descending_path_count(edges, node_index, dist, origin, cap=10**6):
    """Number of distinct paths that strictly descend the potential."""
    out = [[] for _ in range(len(dist))]
    for _, a, b, _, _, _ in edges:
        ia, ib = node_index[a], node_index[b]
        if dist[ib] < dist[ia]:
            out[ia].append(ib)
    order = sorted(range(len(dist)), key=lambda v: dist[v])
    count = [0] * len(dist)
    for v in order:
        if dist[v] == 0.0:
            count[v] = 1
            continue
        if math.isinf(dist[v]):
            continue
        total = 0
        for w in out[v]:
            total += count[w]
        count[v] = min(total, cap)
    return count[origin]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--cols", type=int, default=12)
    ap.add_argument("--rows", type=int, default=10)
    ap.add_argument("--spacing", type=float, default=100.0)
    ap.add_argument("--trips", type=int, default=222)
    ap.add_argument("--unique-ods", type=int, default=215)
    ap.add_argument("--depart-window", type=int, default=1800)
    ap.add_argument("--min-axis-steps", type=int, default=2)
    ap.add_argument("--min-total-steps", type=int, default=6)
    ap.add_argument("--min-paths", type=int, default=8)
    ap.add_argument("--seed", type=int, default=20240901)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    nodes, edges = build_grid(rng, args.cols, args.rows, args.spacing)
    node_index = {n[0]: i for i, n in enumerate(nodes)}

    ods = []
    seen = set()
    guard = 0
    while len(ods) < args.unique_ods:
        guard += 1
        if guard > 200000:
            raise SystemExit("could not place enough OD pairs; loosen filters")
        o = rng.randrange(len(nodes))
        d = rng.randrange(len(nodes))
        if o == d or (o, d) in seen:
            continue
        dc = abs(o % args.cols - d % args.cols)
        dr = abs(o // args.cols - d // args.cols)
        if min(dc, dr) < args.min_axis_steps or dc + dr < args.min_total_steps:
            continue
        dist = shortest_times_to(edges, len(nodes), node_index, d)
        if math.isinf(dist[o]):
            continue
        if descending_path_count(edges, node_index, dist, o) < args.min_paths:
            continue
        seen.add((o, d))
        ods.append((nodes[o][0], nodes[d][0]))

    trips = []
    for i in range(args.trips):
        origin, dest = ods[i] if i < len(ods) else ods[i - len(ods)]
        trips.append((i, origin, dest, rng.randrange(args.depart_window)))

    with open(f"{args.out}/nodes.csv", "w") as f:
        f.write("id,x,y\n")
        for nid, x, y in nodes:
            f.write(f"{nid},{x},{y}\n")
    with open(f"{args.out}/edges.csv", "w") as f:
        f.write("id,from,to,length_m,speed_mps,capacity_vps\n")
        for eid, a, b, length, speed, cap in edges:
            f.write(f"{eid},{a},{b},{length},{speed},{cap}\n")
    with open(f"{args.out}/agents.csv", "w") as f:
        f.write("id,origin,destination,start_time\n")
        for tid, origin, dest, start in trips:
            f.write(f"{tid},{origin},{dest},{start}\n")

    print(f"{len(nodes)} nodes, {len(edges)} edges, {len(trips)} trips, "
          f"{len(set((o, d) for _, o, d, _ in trips))} unique ODs")


if __name__ == "__main__":
    main()
