#ifndef IGATWO_REFERENCE_HPP
#define IGATWO_REFERENCE_HPP

// Reference convergence factors and iteration counts used as regression
// targets. Factor tables: rows p = 2..8, columns block sizes 9, 25, 49.

namespace igatwo::reference {

inline constexpr int factor_min_p = 2;
inline constexpr int factor_blocks[3] = {9, 25, 49};

inline constexpr double two_grid[7][3] = {
    {0.1234, 0.0813, 0.0604}, {0.2150, 0.0874, 0.0622}, {0.4581, 0.1294, 0.0697},
    {0.7095, 0.2690, 0.1001}, {0.8786, 0.4549, 0.1909}, {0.9576, 0.6623, 0.3260},
    {0.9868, 0.8278, 0.4885},
};

inline constexpr double measured[7][3] = {
    {0.1212, 0.0752, 0.0725}, {0.2141, 0.0854, 0.0712}, {0.4558, 0.1466, 0.0852},
    {0.7058, 0.2847, 0.1215}, {0.8756, 0.4555, 0.2113}, {0.9573, 0.6601, 0.3284},
    {0.9851, 0.8146, 0.4764},
};

inline constexpr double three_grid[7][3] = {
    {0.1281, 0.0847, 0.0624}, {0.2144, 0.0920, 0.0690}, {0.4566, 0.1290, 0.0733},
    {0.7078, 0.2676, 0.0986}, {0.8773, 0.4549, 0.1909}, {0.9569, 0.6591, 0.3174},
    {0.9864, 0.8250, 0.4734},
};

inline constexpr double aggressive[7][3] = {
    {0.1723, 0.1137, 0.0837}, {0.2145, 0.1152, 0.0863}, {0.4566, 0.1290, 0.0874},
    {0.7078, 0.2676, 0.0986}, {0.8773, 0.4549, 0.1909}, {0.9569, 0.6591, 0.3174},
    {0.9864, 0.8250, 0.4734},
};

// Square domain, aggressive coarsening with one V(1,1) cycle, default blocks.
// Rows m = 64 .. 1024, columns p = 2..8.
inline constexpr int square_meshes[5] = {64, 128, 256, 512, 1024};
inline constexpr int square_iterations[5][7] = {
    {6, 6, 7, 5, 5, 4, 4}, {6, 6, 7, 5, 5, 4, 4}, {6, 6, 7, 5, 5, 5, 5},
    {6, 6, 7, 5, 5, 5, 5}, {6, 6, 7, 6, 5, 5, 5},
};
inline constexpr double square_seconds[5][7] = {
    {0.05, 0.06, 0.08, 0.19, 0.25, 0.89, 1.04},
    {0.14, 0.17, 0.23, 0.50, 0.62, 2.14, 2.50},
    {0.46, 0.55, 0.79, 1.45, 1.78, 6.68, 7.63},
    {1.69, 2.06, 2.86, 4.87, 5.83, 18.14, 20.71},
    {6.83, 8.34, 11.21, 21.22, 21.12, 55.76, 62.86},
};

// Quarter annulus, p_low = 2. Rows m = 32 .. 256, columns p = 3..8.
// direct: exact coarse solve; multigrid: aggressive coarsening with one V(1,1) cycle.
inline constexpr int annulus_meshes[4] = {32, 64, 128, 256};
inline constexpr int annulus_direct[4][6] = {
    {5, 8, 4, 6, 3, 4}, {5, 8, 4, 6, 4, 5}, {6, 7, 4, 6, 4, 5}, {6, 8, 4, 6, 4, 5},
};
inline constexpr int annulus_multigrid[4][6] = {
    {5, 8, 4, 6, 3, 4}, {7, 8, 5, 6, 4, 5}, {8, 8, 6, 6, 5, 5}, {9, 8, 6, 6, 6, 6},
};

inline int block_column(int block_size)
{
    return block_size == 9 ? 0 : block_size == 25 ? 1 : block_size == 49 ? 2 : -1;
}

} // namespace igatwo::reference

#endif // IGATWO_REFERENCE_HPP
