//! Published results, transcribed for side-by-side reporting.

/// (benchmark, realization, k, qubits, T for def/direct, def_wo4/direct, def/hybrid, def_wo4/hybrid)
pub(super) const EPFL: &[(&str, &str, usize, u64, [u64; 4])] = &[
    ("adder", "Best-LUT", 6, 448, [14411, 20487, 12623, 12721]),
    ("adder", "Original", 6, 505, [6670, 6510, 2066, 2066]),
    ("adder", "Best-LUT", 10, 445, [18675, 24320, 13576, 13674]),
    ("adder", "Original", 10, 490, [21357, 20313, 2860, 2860]),
    ("adder", "Best-LUT", 16, 443, [45577, 50946, 14699, 14797]),
    ("adder", "Original", 16, 463, [313142, 309018, 5122, 5122]),
    ("bar", "Best-LUT", 6, 840, [32512, 32512, 17024, 17024]),
    ("bar", "Original", 6, 584, [50944, 50944, 76883, 76883]),
    ("bar", "Best-LUT", 10, 740, [52986, 52986, 42656, 42656]),
    ("bar", "Original", 10, 584, [50944, 50944, 76883, 76883]),
    ("bar", "Best-LUT", 16, 595, [114690, 114690, 79530, 79530]),
    ("bar", "Original", 16, 582, [52480, 52480, 78671, 78671]),
    ("div", "Best-LUT", 6, 3399, [346010, 341583, 435568, 435575]),
    ("div", "Original", 6, 12389, [754587, 754587, 819918, 819918]),
    ("div", "Best-LUT", 10, 3226, [450381, 445567, 510188, 510195]),
    ("div", "Original", 10, 12055, [875819, 875847, 1073427, 1073427]),
    ("div", "Best-LUT", 16, 3017, [3815286, 3891364, 956116, 956123]),
    ("div", "Original", 16, 11827, [1415585, 1417387, 1296742, 1296742]),
    ("hyp", "Best-LUT", 6, 40611, [3807147, 3672932, 5050507, 5050521]),
    ("hyp", "Original", 6, 47814, [2344226, 2314392, 3571061, 3571071]),
    ("hyp", "Best-LUT", 10, 36443, [5902745, 5834737, 7893544, 7893427]),
    ("hyp", "Original", 10, 43871, [4345646, 4342966, 5430785, 5430737]),
    ("hyp", "Best-LUT", 16, 32336, [20239832, 20919129, 11713691, 11716038]),
    ("hyp", "Original", 16, 39324, [22132834, 23300693, 8148322, 8148289]),
    ("log2", "Best-LUT", 6, 6625, [664450, 660068, 1363770, 1363770]),
    ("log2", "Original", 6, 7611, [501749, 501789, 996739, 996739]),
    ("log2", "Best-LUT", 10, 3038, [2036814, 2050844, 20342942, 20343371]),
    ("log2", "Original", 10, 2875, [3284753, 3314383, 25548190, 25549307]),
    ("log2", "Best-LUT", 16, 2052, [56589962, 59587462, 44644140, 44823085]),
    ("log2", "Original", 16, 2315, [61071767, 64461123, 64368103, 64447809]),
    ("max", "Best-LUT", 6, 1036, [56290, 55970, 19849, 19849]),
    ("max", "Original", 6, 1233, [71198, 69484, 64933, 64933]),
    ("max", "Best-LUT", 10, 840, [195367, 193683, 25270, 25270]),
    ("max", "Original", 10, 901, [229669, 222761, 88221, 88221]),
    ("max", "Best-LUT", 16, 725, [1082574, 1077303, 34488, 34400]),
    ("max", "Original", 16, 796, [748389, 745389, 94758, 94702]),
    ("multiplier", "Best-LUT", 6, 5048, [683648, 680190, 868688, 868638]),
    ("multiplier", "Original", 6, 5806, [386999, 387113, 733615, 733615]),
    ("multiplier", "Best-LUT", 10, 3418, [1148166, 1144532, 1368820, 1368802]),
    ("multiplier", "Original", 10, 3105, [2377198, 2377251, 2519515, 2519355]),
    ("multiplier", "Best-LUT", 16, 2552, [9928094, 10422808, 3281867, 3294871]),
    ("multiplier", "Original", 16, 2852, [8072619, 8283999, 3189854, 3192826]),
    ("sin", "Best-LUT", 6, 1277, [141885, 141456, 211143, 211143]),
    ("sin", "Original", 6, 1468, [87624, 87872, 134664, 134664]),
    ("sin", "Best-LUT", 10, 557, [362108, 365175, 715314, 716079]),
    ("sin", "Original", 10, 714, [408996, 411850, 1074871, 1074905]),
    ("sin", "Best-LUT", 16, 418, [3730177, 3953575, 1759815, 1791503]),
    ("sin", "Original", 16, 518, [3820348, 3913954, 3007519, 3008373]),
    ("sqrt", "Best-LUT", 6, 3204, [368301, 357593, 447805, 447798]),
    ("sqrt", "Original", 6, 8212, [279275, 279275, 749687, 749687]),
    ("sqrt", "Best-LUT", 10, 2874, [549624, 542394, 566272, 566433]),
    ("sqrt", "Original", 10, 7892, [323882, 323656, 833700, 833716]),
    ("sqrt", "Best-LUT", 16, 2632, [6158349, 6247981, 1404786, 1408346]),
    ("sqrt", "Original", 16, 7816, [1524733, 1729343, 1028329, 1028401]),
    ("square", "Best-LUT", 6, 3309, [299986, 295325, 489565, 489617]),
    ("square", "Original", 6, 4058, [195290, 195312, 768725, 768725]),
    ("square", "Best-LUT", 10, 2882, [532854, 531211, 826100, 826121]),
    ("square", "Original", 10, 3355, [464024, 464320, 1243876, 1243988]),
    ("square", "Best-LUT", 16, 2303, [3964800, 4142416, 2303327, 2355942]),
    ("square", "Original", 16, 2664, [4249919, 4470766, 3075569, 3156642]),
];

/// (benchmark, k, qubits, T) under def_wo4/hybrid.
pub(super) const FLOATING_POINT: &[(&str, usize, u64, u64)] = &[
    ("add-16", 6, 230, 18351),
    ("add-16", 10, 186, 24067),
    ("add-16", 16, 156, 33521),
    ("add-32", 6, 526, 40853),
    ("add-32", 10, 410, 53060),
    ("add-32", 16, 368, 66463),
    ("add-64", 6, 1194, 77843),
    ("add-64", 10, 960, 109164),
    ("add-64", 16, 867, 130990),
    ("cmp-16", 6, 65, 3720),
    ("cmp-16", 10, 48, 7959),
    ("cmp-16", 16, 40, 30426),
    ("cmp-32", 6, 126, 9261),
    ("cmp-32", 10, 95, 16800),
    ("cmp-32", 16, 81, 29335),
    ("cmp-64", 6, 245, 16519),
    ("cmp-64", 10, 181, 34372),
    ("cmp-64", 16, 163, 38967),
    ("div-16", 6, 300, 12244),
    ("div-16", 10, 223, 28639),
    ("div-16", 16, 144, 589721),
    ("div-32", 6, 1260, 32391),
    ("div-32", 10, 1106, 58536),
    ("div-32", 16, 935, 289978),
    ("div-64", 6, 5876, 123912),
    ("div-64", 10, 5514, 177343),
    ("div-64", 16, 5149, 300721),
    ("exp-16", 6, 1371, 141210),
    ("exp-16", 10, 978, 252299),
    ("exp-16", 16, 32, 1193083),
    ("exp-32", 6, 4636, 488579),
    ("exp-32", 10, 3489, 662350),
    ("exp-32", 16, 3019, 792008),
    ("invsqrt-16", 6, 899, 39410),
    ("invsqrt-16", 10, 781, 119574),
    ("invsqrt-16", 16, 32, 169282),
    ("invsqrt-32", 6, 4242, 118973),
    ("invsqrt-32", 10, 4008, 349414),
    ("invsqrt-32", 16, 3609, 703324),
    ("invsqrt-64", 6, 20874, 408652),
    ("invsqrt-64", 10, 20274, 886327),
    ("invsqrt-64", 16, 19536, 2009862),
    ("ln-16", 6, 867, 139456),
    ("ln-16", 10, 303, 317543),
    ("ln-16", 16, 32, 1623461),
    ("ln-32", 6, 3275, 334303),
    ("ln-32", 10, 1317, 5672890),
    ("ln-32", 16, 1033, 15357188),
    ("ln-64", 6, 13150, 254749),
    ("ln-64", 10, 12551, 370890),
    ("ln-64", 16, 12031, 1305192),
    ("log2-16", 6, 937, 110827),
    ("log2-16", 10, 312, 317921),
    ("log2-16", 16, 32, 850331),
    ("log2-32", 6, 4008, 436039),
    ("log2-32", 10, 1711, 8079605),
    ("log2-32", 16, 1244, 17600310),
    ("log2-64", 6, 6413, 278109),
    ("log2-64", 10, 6021, 397363),
    ("log2-64", 16, 5862, 735507),
    ("mult-16", 6, 499, 43447),
    ("mult-16", 10, 381, 72307),
    ("mult-16", 16, 267, 141657),
    ("mult-32", 6, 1536, 157040),
    ("mult-32", 10, 1020, 423648),
    ("mult-32", 16, 862, 623438),
    ("mult-64", 6, 5495, 598285),
    ("mult-64", 10, 3253, 1919743),
    ("mult-64", 16, 2941, 2266026),
    ("recip-16", 6, 623, 63452),
    ("recip-16", 10, 43, 89497),
    ("recip-16", 16, 32, 198167),
    ("recip-32", 6, 1914, 201730),
    ("recip-32", 10, 1194, 519091),
    ("recip-32", 16, 916, 1963459),
    ("recip-64", 6, 10277, 1101791),
    ("recip-64", 10, 7111, 1966791),
    ("recip-64", 16, 5856, 4025162),
    ("sincos-16", 6, 367, 25061),
    ("sincos-16", 10, 278, 40579),
    ("sincos-16", 16, 34, 452129),
    ("sincos-32", 6, 1740, 148104),
    ("sincos-32", 10, 1438, 184706),
    ("sincos-32", 16, 1284, 226328),
    ("square-16", 6, 113, 12223),
    ("square-16", 10, 35, 73381),
    ("square-16", 16, 32, 133489),
    ("square-32", 6, 564, 34821),
    ("square-32", 10, 412, 70945),
    ("square-32", 16, 269, 1195946),
    ("square-64", 6, 2788, 134370),
    ("square-64", 10, 2251, 227490),
    ("square-64", 16, 1803, 1054537),
    ("sqrt-16", 6, 131, 10676),
    ("sqrt-16", 10, 76, 30880),
    ("sqrt-16", 16, 32, 165545),
    ("sqrt-32", 6, 597, 26342),
    ("sqrt-32", 10, 448, 77226),
    ("sqrt-32", 16, 320, 6780943),
    ("sqrt-64", 6, 2855, 80194),
    ("sqrt-64", 10, 2498, 222445),
    ("sqrt-64", 16, 2059, 3655540),
    ("sub-16", 6, 231, 17972),
    ("sub-16", 10, 185, 23164),
    ("sub-16", 16, 156, 33626),
    ("sub-32", 6, 528, 40310),
    ("sub-32", 10, 405, 54273),
    ("sub-32", 16, 363, 71079),
    ("sub-64", 6, 1191, 78388),
    ("sub-64", 10, 963, 109029),
    ("sub-64", 16, 874, 135901),
];
