"""Reductions as instance generators, checked against their source oracles.

Run: python demos/reductions_tour.py
"""

from mixedcolor import (
    SchedulingInstance,
    SuperstringInstance,
    branching_decide,
    brute_force_chi,
    check_proper,
    maxrank,
    ndu,
    reduce_scheduling,
    reduce_superstring,
    schedule_exists,
    superstring_coloring,
    superstring_exists,
    transitive_closure,
)

print("Common supersequence as coloring:")
inst = SuperstringInstance(("01", "100", "11"), 4)
graph, k = reduce_superstring(inst)
chi, _ = brute_force_chi(graph)
print(f"  strings {inst.strings}, target length {k}")
print(f"  reduction graph: n={graph.n}, chi={chi}")
print(f"  supersequence of length 4 exists: {superstring_exists(inst.strings, 4)}")
print(f"  ... of length 3: {superstring_exists(inst.strings, 3)}")
coloring = superstring_coloring(inst, "1010")
print(f"  coloring induced by '1010' is proper: {check_proper(graph, coloring)[0]}")

split, _ = reduce_superstring(inst, split=True)
print(f"  split variant: n={split.n}, maxrank={maxrank(split)}")

print()
print("Two-machine scheduling with precedence:")
sched = SchedulingInstance(("t1",), ("t2", "t3"), (("t1", "t3"),), 2)
pcs, k = reduce_scheduling(sched)
print(f"  tasks {sched.all_tasks()}, deadline {sched.deadline} -> {k}-coloring instance")
print(f"  schedulable: {schedule_exists(sched)};"
      f" {k}-colorable: {branching_decide(pcs, k).decision}")
tight = SchedulingInstance(("t1",), ("t2", "t3"), (("t1", "t3"),), 1)
pcs1, k1 = reduce_scheduling(tight)
print(f"  deadline 1: schedulable: {schedule_exists(tight)};"
      f" {k1}-colorable: {branching_decide(pcs1, k1).decision}")
print(f"  closure of the instance has {ndu(transitive_closure(pcs))} undirected types")
