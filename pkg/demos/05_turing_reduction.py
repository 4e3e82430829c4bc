"""
Encoding Turing machine runs
============================

Consecutive configurations of a machine can be merged into one word of
"ambiguous" letters that sits above both.  A mortal machine keeps every
height small; a machine that runs forever yields words u in L and v not
in L that short games cannot tell apart.
"""

from foplus import reduction as R
from foplus.alphabet import format_word
from foplus.efgame import duplicator_wins

mortal = R.ReductionContext(R.normalize_types(R.load_fixture("mortal")))
c = R.is_configuration(mortal, mortal.parse("0 0 1^d3 [b.0] 0_d2 0"))
nxt = R.tm_step(mortal, c)
merged = R.merge_configs(mortal, c, nxt)
print("c      ", format_word(mortal.config_word(c)), " height", R.height(mortal, c))
print("next   ", format_word(mortal.config_word(nxt)), " height", R.height(mortal, nxt))
print("merged ", format_word(merged))
print("below the merge:", len(R.decode_under(mortal, merged)), "configurations")
print("longest run of the mortal machine:", R.max_run_length(mortal.machine, 5))

sweeper = R.ReductionContext(R.normalize_types(R.load_fixture("sweeper")))
start = next(x for x in R.enumerate_configs(sweeper, 7) if x.head_pos == 1 and x.cfg_type == 1)
for big_n in (2, 3, 4):
    u, v = R.build_duplicator_instance(sweeper, start, big_n)
    report = R.analyze_factors(sweeper, v)
    state = "forbidden factor" if report.forbidden else f"non-coherent factor: {report.first_noncoherent}"
    print(
        f"N={big_n}: u in L={R.in_language(sweeper, u)}, v in L={R.in_language(sweeper, v)},",
        f"1 round={duplicator_wins(sweeper.alphabet, u, v, 1, max_total_length=len(u) + len(v))}, {state}",
    )
