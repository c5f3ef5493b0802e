"""
Catalog of the record curves, their cubic fields, and the standard test
curves, together with published auxiliary data (root numbers, prime
bounds, Selmer-bound table rows) that the pipeline accepts as input.
"""

from __future__ import annotations

from .cubic import BinaryCubicForm
from .elliptic import EllipticCurve

# First-exhibited curves of each rank, keyed by rank.  a-invariants,
# global root number, and the known lower bound on the Mordell-Weil rank.
RECORD_CURVES = {
    20: {
        "ainvs": (1, 0, 0, -431092980766333677958362095891166,
                  5156283555366643659035652799871176909391533088196),
        "root_number": 1,
        "known_rank": 20,
    },
    21: {
        "ainvs": (1, 1, 1, -215843772422443922015169952702159835,
                  -19474361277787151947255961435459054151501792241320535),
        "root_number": -1,
        "known_rank": 21,
    },
    22: {
        "ainvs": (1, 0, 1, -940299517776391362903023121165864,
                  10707363070719743033425295515449274534651125011362),
        "root_number": 1,
        "known_rank": 22,
    },
    23: {
        "ainvs": (1, 0, 1, -19252966408674012828065964616418441723,
                  32685500727716376257923347071452044295907443056345614006),
        "root_number": -1,
        "known_rank": 23,
    },
    24: {
        "ainvs": (1, 0, 1, -120039822036992245303534619191166796374,
                  504224992484910670010801799168082726759443756222911415116),
        "root_number": 1,
        "known_rank": 24,
    },
    27: {
        "ainvs": (1, 0, 0, -55671146865244401916117773020296610079754015500970,
                  161981895322788558220906653027519611838007321625214218991719656790551905956),
        "root_number": -1,
        "known_rank": 27,
    },
    28: {
        "ainvs": (1, -1, 1, -20067762415575526585033208209338542750930230312178956502,
                  34481611795030556467032985690390720374855944359319180361266008296291939448732243429),
        "root_number": 1,
        "known_rank": 28,
    },
}

# Julia-reduced defining forms of the cubic 2-division subfields, with
# discriminant equal to the field discriminant.
REDUCED_FIELD_FORMS = {
    20: (13370149617006967, 36323790822192190, 97698281640159313,
         -102297590541619200),
    21: (274654350297600, -1624392373464273559, -9371598016369119418702,
         6162113868013558026402675),
    22: (6142990220640, 204976117420509373, -169253519238896688671,
         -628110960931737938720390),
    23: (59865403640328000, 30357716218004835541, -14206611767334834785,
         3031944233345318784207),
    24: (70256883874320, 75608696284455934477, -214624301781108927172690,
         -25666999271392112689637803778),
    27: (15560036076469248, 51468441407469319836143473,
         -497312227802505407769400165687028,
         556884612253557846953628131195272740623601),
    28: (64023127168000, 10309553525987840512490787747,
         -3858878002265332645698861066081585182608,
         -69043295714402138353376748510210837676894689434302674),
}

# Published generator bounds per field: (Bach bound, Belabas bound).
# The Belabas bounds come from an external routine and are consumed as
# inputs; the Bach bounds are floor(12 ln^2 |disc|).
PRIME_BOUNDS = {
    20: (295854, 29585),
    21: (419613, 55948),
    22: (371338, 37133),
    23: (412632, 48140),
    24: (500045, 66672),
    27: (908397, 143829),
    28: (1202639, 200439),
}

# Published Selmer-bound rows: rank -> (g_upper, u, n, root_number,
# selmer_upper).  g_upper is conditional on GRH.
BK_TABLE = {
    20: (15, 1, 5, 1, 20),
    21: (14, 2, 5, -1, 21),
    22: (16, 2, 4, 1, 22),
    23: (15, 1, 8, -1, 23),
    24: (16, 2, 7, 1, 24),
    27: (22, 1, 5, -1, 27),
    28: (20, 2, 6, 1, 28),
}

# Small standard curves: label -> (ainvs, conductor, root number, rank).
STANDARD_CURVES = {
    "11a": ((0, -1, 1, 0, 0), 11, 1, 0),
    "37a": ((0, 0, 1, -1, 0), 37, -1, 1),
    "389a": ((0, 1, 1, -2, 0), 389, 1, 2),
    "5077a": ((0, 0, 1, -7, 6), 5077, -1, 3),
}


def record_curve(rank: int) -> EllipticCurve:
    return EllipticCurve(*RECORD_CURVES[rank]["ainvs"])


def reduced_field_form(rank: int) -> BinaryCubicForm:
    return BinaryCubicForm(*REDUCED_FIELD_FORMS[rank])


def standard_curve(label: str) -> EllipticCurve:
    return EllipticCurve(*STANDARD_CURVES[label][0])


# 27 published independent points on the rank-27 record curve.
RANK27_POINTS = [
    (3767967516008165080365044, 2389736302094908158004099904947501190),
    (6870254134405565034404108, 10187524517965617942800545361683736678),
    (3887185284020449623939380, 2077020998301366905747533719381033926),
    (4704247833799635063001076, 2048360739972031724784820678863578246),
    (4126561570009022393013236, 1587663907962563318996362180056025478),
    (4589477829219012602846900, 1774818405716699582839388275297252934),
    (1744288391661626065189796, 8377495495389391047035879698795823126),
    (375965292932773063399988, 11878746522289663117790823052090948358),
    (-4430058725939313297140384, 17935065674772418581237173320631279206),
    (46029381695079838296565796, 308418721198583803941973238472690797126),
    (5015368619774521542769364, 2987769291318668561101046595511063430),
    (55141979583089031946559900, 405905110011451276640435700460385551166),
    (2703830808220294466353748, 5587793124284970779400186615144247334),
    (3412724629872318338319668, 3426156011058008602456511184805561094),
    (272723117214107051072886140, 4502171870151657762741942725666306991014),
    (4732850534022088572670964, 2124602225002897987491873188898646406),
    (19225480790209113087907256, 78725996092378368618479740248297817478),
    (5213267756598937117846508, 3666105463387143768198032469471386414),
    (-4503215618194252049902522, 17926532987110694852440283715314002874),
    (10358928712485769814651816, 26398450763063898266637186797421380678),
    (6560446866541184312028656, 8894515448962144734398280820434671978),
    (4667249764662401626929236, 1954092716090144351072720616414325286),
    (3131745787384349113625300, 4283649283716227803355987840842617734),
    (243907731994687263474127628, 3807478665185691587984635270031859346574),
    (110171466072672245507182388, 1153803508275547153736593941741941166854),
    (2631452133741740392491152, 5805818938673165314161211507146370634),
    (2398961346477899287733092916, 117498623151243646059583140149253976390406),
]
