//! Reference counts, columns in generator-power order (g^0, g^1, ...).
#![allow(dead_code)]

pub struct Reference {
    pub id: &'static str,
    pub first_degree: usize,
    pub rows: &'static [&'static [u64]],
}

pub const T3T1: Reference = Reference {
    id: "T3T1",
    first_degree: 9,
    rows: &[
        &[7, 9, 7, 9, 9, 8, 7],
        &[15, 14, 15, 15, 12, 14, 14],
        &[28, 26, 26, 24, 28, 28, 26],
        &[46, 46, 50, 49, 49, 46, 49],
        &[89, 96, 89, 89, 89, 89, 89],
        &[168, 162, 162, 169, 162, 169, 169],
        &[310, 310, 316, 310, 316, 316, 304],
        &[588, 582, 588, 582, 582, 570, 588],
        &[1093, 1109, 1093, 1093, 1104, 1109, 1109],
        &[2075, 2069, 2069, 2100, 2075, 2075, 2069],
        &[3951, 3951, 3960, 3927, 3927, 3951, 3927],
        &[7502, 7458, 7471, 7471, 7502, 7471, 7502],
        &[14208, 14282, 14282, 14268, 14282, 14268, 14268],
        &[27258, 27258, 27189, 27258, 27189, 27189, 27216],
    ],
};

pub const T2T1GROUP: Reference = Reference {
    id: "T2T1group",
    first_degree: 10,
    rows: &[
        &[33, 33, 33],
        &[62, 62, 62],
        &[111, 112, 112],
        &[210, 210, 210],
        &[387, 387, 387],
        &[726, 728, 728],
        &[1360, 1360, 1360],
        &[2570, 2570, 2570],
        &[4842, 4845, 4845],
        &[9198, 9198, 9198],
        &[17459, 17459, 17459],
    ],
};

pub const P3T21GROUP: Reference = Reference {
    id: "p3T21group",
    first_degree: 10,
    rows: &[
        &[720, 737, 732, 737, 744, 739, 732, 739],
        &[2013, 2025, 2004, 2001, 2013, 2001, 2022, 2025],
        &[5506, 5554, 5520, 5554, 5534, 5516, 5520, 5516],
        &[15330, 15325, 15282, 15335, 15330, 15335, 15378, 15325],
        &[42720, 42745, 42666, 42745, 42612, 42665, 42666, 42665],
        &[119572, 119484, 119548, 119660, 119572, 119660, 119596, 119484],
        &[336387, 336243, 336200, 336243, 336013, 336362, 336200, 336362],
        &[949560, 949440, 949848, 949680, 949560, 949680, 949272, 949440],
        &[2690096, 2690030, 2690142, 2690030, 2690188, 2690800, 2690142, 2690800],
        &[7646457, 7646865, 7647144, 7646049, 7646457, 7646049, 7645770, 7646865],
        &[21790236, 21792137, 21791664, 21792137, 21793092, 21792667, 21791664, 21792667],
    ],
};

pub const P2T2: Reference = Reference {
    id: "p2T2",
    first_degree: 10,
    rows: &[
        &[48, 51],
        &[93, 93],
        &[165, 170],
        &[315, 315],
        &[576, 585],
        &[1091, 1091],
        &[2032, 2048],
        &[3855, 3855],
        &[7252, 7280],
        &[13797, 13797],
        &[26163, 26214],
    ],
};

pub const P3T2: Reference = Reference {
    id: "p3T2",
    first_degree: 10,
    rows: &[
        &[984, 988, 972, 976, 972, 988],
        &[2684, 2673, 2673, 2684, 2695, 2695],
        &[7338, 7371, 7371, 7398, 7371, 7371],
        &[20440, 20468, 20468, 20440, 20412, 20412],
        &[56940, 56966, 56862, 56888, 56862, 56966],
        &[159424, 159359, 159359, 159424, 159505, 159505],
        &[448130, 448335, 448335, 448540, 448335, 448335],
        &[1266080, 1266273, 1266273, 1266080, 1265887, 1265887],
        &[3587208, 3587409, 3586680, 3586842, 3586680, 3587409],
        &[10195276, 10194758, 10194758, 10195276, 10195794, 10195794],
        &[29054568, 29056044, 29056044, 29057520, 29056044, 29056044],
    ],
};

pub const T3T1CUM: Reference = Reference {
    id: "T3T1cum",
    first_degree: 1,
    rows: &[
        &[0, 1, 0, 1, 0, 0, 0],
        &[0, 1, 0, 1, 0, 1, 0],
        &[0, 1, 0, 1, 1, 1, 0],
        &[0, 2, 1, 1, 1, 1, 1],
        &[1, 3, 1, 2, 2, 2, 2],
        &[2, 3, 3, 4, 3, 4, 3],
        &[5, 6, 6, 6, 6, 6, 5],
        &[9, 10, 10, 10, 10, 10, 11],
        &[16, 19, 17, 19, 19, 18, 18],
        &[31, 33, 32, 34, 31, 32, 32],
        &[59, 59, 58, 58, 59, 60, 58],
        &[105, 105, 108, 107, 108, 106, 107],
        &[194, 201, 197, 196, 197, 195, 196],
        &[362, 363, 359, 365, 359, 364, 365],
        &[672, 673, 675, 675, 675, 680, 669],
        &[1260, 1255, 1263, 1257, 1257, 1250, 1257],
        &[2353, 2364, 2356, 2350, 2361, 2359, 2366],
        &[4428, 4433, 4425, 4450, 4436, 4434, 4435],
        &[8379, 8384, 8385, 8377, 8363, 8385, 8362],
        &[15881, 15842, 15856, 15848, 15865, 15856, 15864],
        &[30089, 30124, 30138, 30116, 30147, 30124, 30132],
        &[57347, 57382, 57327, 57374, 57336, 57313, 57348],
        &[109455, 109448, 109435, 109440, 109402, 109513, 109456],
        &[209321, 209224, 209301, 209306, 209346, 209289, 209232],
        &[400992, 401057, 401134, 400970, 401017, 400960, 401065],
        &[769719, 769784, 769546, 769704, 769751, 769687, 769799],
        &[1479730, 1479808, 1479863, 1480021, 1479762, 1480004, 1479810],
        &[2849599, 2849372, 2849427, 2849299, 2849326, 2849282, 2849088],
        &[5494035, 5493808, 5494161, 5493735, 5494060, 5494016, 5494368],
        &[10606547, 10607133, 10606673, 10607060, 10607385, 10606772, 10606880],
        &[20503110, 20503464, 20503236, 20503623, 20502369, 20503103, 20503211],
        &[39677586, 39676638, 39676410, 39676353, 39676845, 39677579, 39676385],
        &[76862350, 76861402, 76863706, 76862819, 76863311, 76862343, 76862851],
        &[149046001, 149048350, 149046544, 149045657, 149046962, 149045181, 149046502],
        &[289290199, 289290123, 289288317, 289291420, 289288735, 289290944, 289292265],
        &[561985241, 561985165, 561985719, 561986462, 561986137, 561988346, 561981893],
        &[1092641229, 1092635899, 1092641707, 1092637196, 1092636871, 1092634490, 1092637881],
        &[2126009274, 2126013541, 2126009752, 2126005241, 2126015143, 2126012132, 2126015523],
        &[4139763776, 4139768673, 4139764884, 4139779049, 4139769645, 4139766634, 4139770655],
        &[8066595506, 8066600403, 8066595408, 8066591969, 8066582565, 8066598364, 8066583575],
    ],
};

pub const ALL: [&Reference; 6] = [&T3T1, &T2T1GROUP, &P3T21GROUP, &P2T2, &P3T2, &T3T1CUM];

/// Reference tie groups per residue, as column indices: (id, period, residue, groups).
pub const PATTERNS: &[(&str, u64, u64, &[&[usize]])] = &[
    ("T3T1", 7, 0, &[&[1, 2, 4], &[3, 5, 6]]),
    ("T3T1", 7, 1, &[&[0, 1, 3], &[2, 4, 5]]),
    ("T2T1group", 3, 0, &[&[1, 2]]),
    ("T2T1group", 3, 1, &[&[0, 1, 2]]),
    ("T2T1group", 3, 2, &[&[0, 1, 2]]),
    ("p3T21group", 2, 0, &[&[1, 3], &[2, 6], &[5, 7]]),
    ("p3T21group", 2, 1, &[&[0, 4], &[1, 7], &[3, 5]]),
    ("p2T2", 2, 1, &[&[0, 1]]),
    ("p3T2", 4, 0, &[&[1, 2, 4, 5]]),
    ("p3T2", 4, 1, &[&[0, 3], &[1, 2], &[4, 5]]),
    ("p3T2", 4, 2, &[&[1, 5], &[2, 4]]),
    ("p3T2", 4, 3, &[&[0, 3], &[1, 2], &[4, 5]]),
];
