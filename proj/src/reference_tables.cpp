#include "cauchywell/reference_tables.hpp"

namespace cauchywell {

// Values transcribed digit-for-digit from the published tables;
// see README references. Do not re-round.

const std::vector<TableIRow>& table_I()
{
    static const std::vector<TableIRow> rows = {
        {2, 0.937291, 1.200000, {-0.400000}},
        {4, 0.931331, 1.180929, {-0.353189, -0.03467461}},
        {6, 0.927253, 1.170127, {-0.333863, -0.00891937, -0.0332900}},
        {8, 0.925363, 1.165443, {-0.326159, -0.00332500, -0.0173088, -0.0221718}},
        {10, 0.924339, 1.162981, {-0.322268, -0.00097523, -0.0134732, -0.0111668, -0.0163303}},
        {12, 0.923728, 1.161534, {-0.320035, 0.00025555, -0.0117497, -0.0084661, -0.0081667, -0.0126748}},
        {14, 0.923337, 1.160614, {-0.318637, 0.00098488, -0.0107978, -0.0072137, -0.0061348, -0.0063114, -0.0102120}},
        {16, 0.923071, 1.159993, {-0.317704, 0.00145367, -0.0102098, -0.0065016, -0.0051721, -0.0047139, -0.0050726, -0.0084590}},
        {18, 0.922884, 1.159555, {-0.317051, 0.00177313, -0.0098192, -0.0060507, -0.0046131, -0.0039456, -0.0037753, -0.0041958}},
        {20, 0.922746, 1.159234, {-0.316576, 0.00200068, -0.0095458, -0.0057448, -0.0042525, -0.0034927, -0.0031448, -0.0031160}},
        {30, 0.922409, 1.158447, {-0.315422, 0.00253637, -0.0089180, -0.0050710, -0.0035043, -0.0026342, -0.0021154, -0.0017921}},
        {40, 0.922868, 1.158159, {-0.315006, 0.00272257, -0.0087053, -0.0048519, -0.0032737, -0.0023882, -0.0018495, -0.0015006}},
        {50, 0.922230, 1.158022, {-0.314810, 0.00280842, -0.0086084, -0.0047537, -0.0031724, -0.0022828, -0.0017390, -0.0013839}},
        {60, 0.922198, 1.157948, {-0.314703, 0.00285494, -0.0085562, -0.0047014, -0.0031190, -0.0022279, -0.0016822, -0.0013250}},
        {70, 0.922179, 1.157902, {-0.314638, 0.00288292, -0.0085249, -0.0046702, -0.0030874, -0.0021957, -0.0016492, -0.0012910}},
        {80, 0.922166, 1.157872, {-0.314595, 0.00290106, -0.0085047, -0.0046501, -0.0030671, -0.0021751, -0.0016283, -0.0012696}},
        {90, 0.922158, 1.157852, {-0.314566, 0.00291348, -0.0084909, -0.0046364, -0.0030534, -0.0021612, -0.0016142, -0.0012552}},
        {100, 0.922152, 1.157837, {-0.314545, 0.00292235, -0.0084810, -0.0046267, -0.0030437, -0.0021514, -0.0016042, -0.0012451}},
        {150, 0.922137, 1.157802, {-0.314496, 0.00294331, -0.0084578, -0.0046039, -0.0030208, -0.0021285, -0.0015811, -0.0012218}},
        {200, 0.922132, 1.157789, {-0.314478, 0.00295063, -0.0084497, -0.0045959, -0.0030130, -0.0021206, -0.0015732, -0.0012139}},
        {300, 0.922129, 1.157781, {-0.314466, 0.00295585, -0.0084440, -0.0045903, -0.0030074, -0.0021151, -0.0015677, -0.0012083}},
        {400, 0.922127, 1.157778, {-0.314461, 0.00295767, -0.0084419, -0.0045884, -0.0030055, -0.0021132, -0.0015658, -0.0012064}},
        {500, 0.922127, 1.157776, {-0.314459, 0.00295851, -0.0084410, -0.0045875, -0.0030046, -0.0021123, -0.0015649, -0.0012056}},
    };
    return rows;
}

const std::vector<double>& table_II()
{
    static const std::vector<double> alphas = {
        -0.3144595, 0.00295851, -0.0084410, -0.0045875, -0.0030046,
        -0.0021123, -0.0015649, -0.0012056, -0.0009571, -0.0007784,
        -0.0006454, -0.0005439, -0.0004647, -0.0004016, -0.0003506,
        -0.0003088, -0.0002740, -0.0002449, -0.0002201, -0.0001990,
        -0.0001808, -0.0001650, -0.0001512, -0.0001391, -0.0001284,
        -0.0001189, -0.0001104, -0.0001029, -0.0000960, -0.0000899,
        -0.0000843, -0.0000793, -0.0000747, -0.0000705, -0.0000666,
        -0.0000631, -0.0000598, -0.0000568, -0.0000540, -0.0000515,
        -0.0000491, -0.0000469, -0.0000448, -0.0000429, -0.0000411,
        -0.0000394, -0.0000378, -0.0000363, -0.0000349, -0.0000336,
        -0.0000324, -0.0000312, -0.0000301, -0.0000291, -0.0000281,
        -0.0000272, -0.0000263, -0.0000255, -0.0000247, -0.0000239,
        -0.0000232, -0.0000225, -0.0000219, -0.0000213, -0.0000207,
        -0.0000201, -0.0000196, -0.0000191, -0.0000186, -0.0000181,
        -0.0000177, -0.0000172, -0.0000168, -0.0000164, -0.0000160,
        -0.0000157, -0.0000153, -0.0000150, -0.0000147, -0.0000143,
        -0.0000140, -0.0000137, -0.0000135, -0.0000132, -0.0000129,
        -0.0000127, -0.0000125, -0.0000122, -0.0000120, -0.0000118,
        -0.0000116, -0.0000114, -0.0000112, -0.0000110, -0.0000108,
        -0.0000106, -0.0000104, -0.0000103, -0.0000101, -9.97e-6,
        -9.81e-6, -9.67e-6, -9.53e-6, -9.39e-6, -9.26e-6,
        -9.13e-6, -9.00e-6, -8.88e-6, -8.76e-6, -8.65e-6,
        -8.54e-6, -8.43e-6, -8.33e-6, -8.23e-6, -8.13e-6,
        -8.03e-6, -7.94e-6, -7.85e-6, -7.76e-6, -7.68e-6,
        -7.59e-6, -7.51e-6, -7.43e-6, -7.36e-6, -7.28e-6,
        -7.21e-6, -7.14e-6, -7.08e-6, -7.01e-6, -6.95e-6,
        -6.88e-6, -6.82e-6, -6.77e-6, -6.71e-6, -6.65e-6,
        -6.60e-6, -6.55e-6, -6.50e-6, -6.45e-6, -6.40e-6,
        -6.35e-6, -6.31e-6, -6.27e-6, -6.22e-6, -6.18e-6,
        -6.14e-6, -6.10e-6, -6.07e-6, -6.03e-6, -6.00e-6,
        -5.96e-6, -5.93e-6, -5.90e-6, -5.87e-6, -5.84e-6,
        -5.81e-6, -5.79e-6, -5.76e-6, -5.73e-6, -5.71e-6,
        -5.69e-6, -5.67e-6, -5.65e-6, -5.63e-6, -5.61e-6,
        -5.59e-6, -5.57e-6, -5.56e-6, -5.54e-6, -5.53e-6,
        -5.51e-6, -5.50e-6, -5.49e-6, -5.48e-6, -5.47e-6,
        -5.46e-6, -5.45e-6, -5.45e-6, -5.44e-6, -5.44e-6,
        -5.43e-6, -5.43e-6, -5.43e-6, -5.43e-6, -5.43e-6,
        -5.43e-6, -5.43e-6, -5.44e-6, -5.44e-6, -5.45e-6,
        -5.46e-6, -5.46e-6, -5.47e-6, -5.48e-6, -5.49e-6,
        -5.51e-6, -5.52e-6, -5.54e-6, -5.56e-6, -5.57e-6,
        -5.59e-6, -5.62e-6, -5.64e-6, -5.66e-6, -5.69e-6,
        -5.72e-6, -5.75e-6, -5.78e-6, -5.82e-6, -5.86e-6,
        -5.90e-6, -5.94e-6, -5.98e-6, -6.03e-6, -6.08e-6,
        -6.13e-6, -6.19e-6, -6.25e-6, -6.32e-6, -6.39e-6,
        -6.46e-6, -6.54e-6, -6.62e-6, -6.71e-6, -6.81e-6,
        -6.91e-6, -7.03e-6, -7.15e-6, -7.28e-6, -7.42e-6,
        -7.57e-6, -7.74e-6, -7.92e-6, -8.12e-6, -8.35e-6,
        -8.59e-6, -8.87e-6, -9.18e-6, -9.54e-6, -9.95e-6,
        -0.0000104, -0.0000110, -0.0000117, -0.0000125, -0.0000136,
        -0.0000150, -0.0000171, -0.0000204, -0.0000271, -0.0000540,
    };
    return alphas;
}

const std::vector<TableIIIRow>& table_III()
{
    static const std::vector<TableIIIRow> rows = {
        {7, {1.160614, 2.768252, 4.351150, 5.946117, 7.337136}},
        {8, {1.159993, 2.765561, 4.344362, 5.934918, 7.584192}},
        {9, {1.159555, 2.763594, 4.339381, 5.928041, 7.512343}},
        {10, {1.159234, 2.762114, 4.335613, 5.922546, 7.509991}},
        {15, {1.158447, 2.758299, 4.325845, 5.907535, 7.485347}},
        {20, {1.158159, 2.756826, 4.322066, 5.901342, 7.475242}},
        {25, {1.158022, 2.756110, 4.320233, 5.898233, 7.470144}},
        {30, {1.157948, 2.755709, 4.319211, 5.896463, 7.467238}},
        {35, {1.157902, 2.755463, 4.318584, 5.895363, 7.465432}},
        {40, {1.157872, 2.755301, 4.318173, 5.894634, 7.464235}},
        {45, {1.157852, 2.755188, 4.317889, 5.894127, 7.463403}},
        {50, {1.157837, 2.755107, 4.317685, 5.893759, 7.462802}},
        {75, {1.157802, 2.754913, 4.317196, 5.892875, 7.461356}},
        {100, {1.157789, 2.754844, 4.317024, 5.892559, 7.460842}},
        {150, {1.157781, 2.754795, 4.316900, 5.892331, 7.460473}},
        {200, {1.157778, 2.754777, 4.316857, 5.892251, 7.460343}},
        {250, {1.157776, 2.754769, 4.316837, 5.892214, 7.460282}},
    };
    return rows;
}

const std::array<double, 5>& table_III_literature()
{
    static const std::array<double, 5> row = {1.157773, 2.754754, 4.316801, 5.892147, 7.460175};
    return row;
}

}  // namespace cauchywell
