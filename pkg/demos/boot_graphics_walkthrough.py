"""Walk through the bundled boot-graphics model, start to finish.

Parses the feature tree, encodes it to CNF, classifies every feature as
core, dead or configurable, and prints the strong dependency arcs and
conflict edges with their feature names. This is the smallest complete
tour of the library: one model in, one pair of graphs out.
"""

from collections import Counter

from fmnet.fixtures import coreboot_graphics_model, coreboot_graphics_formula
from fmnet.metrics import compute_node_metrics
from fmnet.strong_graphs import compute_strong_graphs


def main() -> None:
    model = coreboot_graphics_model()
    formula = coreboot_graphics_formula()
    num_features = sum(1 for _ in model.preorder())
    print(f"feature tree: {num_features} features, "
          f"{len(model.constraints)} cross-tree constraints")
    print(f"encoded: {formula.num_vars} variables, "
          f"{len(formula.clauses)} clauses\n")

    graphs = compute_strong_graphs(formula)
    cls = graphs.classification
    name = formula.name_of

    print("core features (present in every valid configuration):")
    for v in sorted(cls.core):
        print(f"  {name(v)}")
    print(f"dead features: {len(cls.dead)}")
    print(f"configurable features: {len(graphs.nodes)}\n")

    print(f"strong dependencies ({len(graphs.dep_arcs)} arcs):")
    for a, b in sorted(graphs.dep_arcs):
        print(f"  {name(a)} -> {name(b)}")

    print(f"\nconflicts ({len(graphs.conflict_edges)} edges):")
    for a, b in sorted(graphs.conflict_edges):
        print(f"  {name(a)} -- {name(b)}")

    # the hubs: who is required the most, who requires the most
    in_deg = Counter(b for _, b in graphs.dep_arcs)
    out_deg = Counter(a for a, _ in graphs.dep_arcs)
    most_required = max(graphs.nodes, key=lambda v: in_deg[v])
    most_requiring = max(graphs.nodes, key=lambda v: out_deg[v])
    print(f"\nmost required:  {name(most_required)} "
          f"(in-degree {in_deg[most_required]})")
    print(f"most requiring: {name(most_requiring)} "
          f"(out-degree {out_deg[most_requiring]})")

    print("\nper-node degrees:")
    for node in compute_node_metrics(graphs):
        print(f"  {node.name:32s} in={node.in_degree} "
              f"out={node.out_degree} conflicts={node.conflict_degree}")


if __name__ == "__main__":
    main()
