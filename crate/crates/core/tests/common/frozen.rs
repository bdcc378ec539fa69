// Generated by tests/oracles/powerlaw_mpmath.py; do not edit.

/// (p, q, z_re, z_im, m_re, m_im) from direct summation at 40 digits.
pub const POWERLAW: &[(u32, u32, f64, f64, f64, f64)] = &[
    (0, 2, 0.050000000000000002776, 0.0, 0.079662085583459804221, 0.0),
    (0, 2, 1.0, 0.0, 1.0766740474685811741, 0.0),
    (0, 2, 7.5, 0.0, 3.8018031966823670052, 0.0),
    (0, 2, 60.0, 0.0, 11.667336027920835691, 0.0),
    (0, 2, 2.0, 3.0, 2.1298140309655418635, 1.4075449152419950991),
    (0, 2, 0.2999999999999999889, -4.0, 1.8062728704566221818, -2.1391356129814280702),
    (2, 0, 0.050000000000000002776, 0.0, 0.32624073655247615491, 0.0),
    (2, 0, 1.0, 0.0, 1.0766740474685811741, 0.0),
    (2, 0, 7.5, 0.0, 1.51660953741867717, 0.0),
    (2, 0, 60.0, 0.0, 1.6271733690470855643, 0.0),
    (2, 0, 2.0, 3.0, 1.4651703486403975286, 0.18445337335357929788),
    (2, 0, 0.2999999999999999889, -4.0, 1.5688631141458022294, -0.24636111975281464866),
    (1, 2, 0.050000000000000002776, 0.0, 0.079370673601662493797, 0.0),
    (1, 2, 1.0, 0.0, 1.0, 0.0),
    (1, 2, 7.5, 0.0, 2.657306482480952982, 0.0),
    (1, 2, 60.0, 0.0, 4.6798704129517378172, 0.0),
    (1, 2, 2.0, 3.0, 1.9390425294578375875, 0.87336044981834544043),
    (1, 2, 0.2999999999999999889, -4.0, 1.9807901384107200087, -1.3724181557710935101),
    (2, 1, 0.050000000000000002776, 0.0, 0.17988698285718410285, 0.0),
    (2, 1, 1.0, 0.0, 1.0, 0.0),
    (2, 1, 7.5, 0.0, 1.5017272302256574772, 0.0),
    (2, 1, 60.0, 0.0, 1.6251957071032547733, 0.0),
    (2, 1, 2.0, 3.0, 1.4454458130142028148, 0.20766127296128638728),
    (2, 1, 0.2999999999999999889, -4.0, 1.562807338511490364, -0.27505388366793476705),
    (2, 2, 0.050000000000000002776, 0.0, 0.078330193659439358259, 0.0),
    (2, 2, 1.0, 0.0, 0.82246703342411321824, 0.0),
    (2, 2, 7.5, 0.0, 1.4514124119249056792, 0.0),
    (2, 2, 60.0, 0.0, 1.6179679346048128883, 0.0),
    (2, 2, 2.0, 3.0, 1.3707783890401886971, 0.27415567780803773941),
    (2, 2, 0.2999999999999999889, -4.0, 1.5240514050674070836, -0.37194665163329031976),
    (3, 3, 0.050000000000000002776, 0.0, 0.057240804912361635664, 0.0),
    (3, 3, 1.0, 0.0, 0.6010284515797971427, 0.0),
    (3, 3, 7.5, 0.0, 1.0606384439643478989, 0.0),
    (3, 3, 60.0, 0.0, 1.1823510522881255266, 0.0),
    (3, 3, 2.0, 3.0, 1.0017140859663285712, 0.20034281719326571423),
    (3, 3, 0.2999999999999999889, -4.0, 1.1137203302874929536, -0.27180483960646563875),
    (0, 3, 0.050000000000000002776, 0.0, 0.057678784642628064572, 0.0),
    (0, 3, 1.0, 0.0, 0.68650334233862388596, 0.0),
    (0, 3, 7.5, 0.0, 1.8659836335559475421, 0.0),
    (0, 3, 60.0, 0.0, 4.2337174445491717241, 0.0),
    (0, 3, 2.0, 3.0, 1.2597856975547173296, 0.59809533996541333796),
    (0, 3, 0.2999999999999999889, -4.0, 1.1935347476050559996, -0.90391265693955800294),
    (0, 4, 0.050000000000000002776, 0.0, 0.051725046579711897381, 0.0),
    (0, 4, 1.0, 0.0, 0.57847757966713683832, 0.0),
    (0, 4, 7.5, 0.0, 1.341304333696316656, 0.0),
    (0, 4, 60.0, 0.0, 2.59133151278072065, 0.0),
    (0, 4, 2.0, 3.0, 1.0088837753245830189, 0.3682473987120475477),
    (0, 4, 0.2999999999999999889, -4.0, 1.0093073080654189207, -0.53207846919092491148),
    (4, 0, 0.050000000000000002776, 0.0, 0.09242548125622646604, 0.0),
    (4, 0, 1.0, 0.0, 0.57847757966713683832, 0.0),
    (4, 0, 7.5, 0.0, 0.96413686634100143581, 0.0),
    (4, 0, 60.0, 0.0, 1.0658619034382532157, 0.0),
    (4, 0, 2.0, 3.0, 0.91502231679003699916, 0.16759018793523761505),
    (4, 0, 0.2999999999999999889, -4.0, 1.0087442976206837471, -0.22712757628837966671),
];

/// (z_re, z_im, psi_re, psi_im).
pub const DIGAMMA: &[(f64, f64, f64, f64)] = &[
    (0.25, 0.0, -4.2274535333762654081, 0.0),
    (-2.5, 0.0, 1.1031566406452431872, 0.0),
    (3.0, 4.0, 1.5503598173334109127, 1.0105022091860444529),
    (-7.2999999999999998224, 0.2000000000000000111, 3.4082485644566204979, 2.2714105995566630952),
    (0.010000000000000000208, -30.0, 3.401284484518002158, -1.5871297200308336463),
    (150.0, 1.0, 5.0073206274394363102, 0.0066888385163679454107),
];

/// (p, zeta(p)).
pub const ZETA: &[(u32, f64)] = &[
    (2, 1.6449340668482264365),
    (3, 1.2020569031595942854),
    (4, 1.0823232337111381915),
    (5, 1.0369277551433699263),
    (7, 1.0083492773819228268),
    (10, 1.0009945751278180853),
    (20, 1.0000009539620338728),
];
