#pragma once

// Generated by tools/gen_ips_moments with 50000 replications per cell. Do not edit.
// Mean and variance of the ADF tau for a Gaussian random walk of length T with
// p augmentation lags; cells with fewer than 3 residual degrees of freedom are absent.

namespace pegls::detail {

struct IpsMomentCell {
    int trend;
    int length;
    int lag;
    double mean;
    double variance;
};

inline constexpr IpsMomentCell kIpsMoments[] = {
    {0, 6, 0, -1.5577, 2.4686},
    {0, 7, 0, -1.5179, 1.6616},
    {0, 8, 0, -1.5073, 1.3825},
    {0, 8, 1, -1.5685, 3.6643},
    {0, 9, 0, -1.4982, 1.2266},
    {0, 9, 1, -1.4983, 1.9224},
    {0, 10, 0, -1.5061, 1.1428},
    {0, 10, 1, -1.4907, 1.5556},
    {0, 10, 2, -1.3133, 2.7792},
    {0, 11, 0, -1.5037, 1.0667},
    {0, 11, 1, -1.4944, 1.3661},
    {0, 11, 2, -1.2890, 1.9628},
    {0, 12, 0, -1.5102, 1.0197},
    {0, 12, 1, -1.4946, 1.2689},
    {0, 12, 2, -1.3157, 1.6284},
    {0, 12, 3, -1.3271, 3.2895},
    {0, 13, 0, -1.5124, 0.9970},
    {0, 13, 1, -1.4935, 1.1573},
    {0, 13, 2, -1.3227, 1.4052},
    {0, 13, 3, -1.3019, 2.1400},
    {0, 14, 0, -1.5114, 0.9585},
    {0, 14, 1, -1.4913, 1.1190},
    {0, 14, 2, -1.3426, 1.2986},
    {0, 14, 3, -1.3222, 1.7653},
    {0, 14, 4, -1.1816, 3.0620},
    {0, 15, 0, -1.5083, 0.9344},
    {0, 15, 1, -1.4956, 1.0834},
    {0, 15, 2, -1.3503, 1.2292},
    {0, 15, 3, -1.3130, 1.5083},
    {0, 15, 4, -1.1728, 2.0831},
    {0, 20, 0, -1.5114, 0.8594},
    {0, 20, 1, -1.5056, 0.9398},
    {0, 20, 2, -1.4045, 1.0207},
    {0, 20, 3, -1.3730, 1.1565},
    {0, 20, 4, -1.2528, 1.2835},
    {0, 20, 5, -1.2316, 1.4997},
    {0, 20, 6, -1.0962, 1.7998},
    {0, 20, 7, -1.1247, 3.2053},
    {0, 25, 0, -1.5210, 0.8250},
    {0, 25, 1, -1.5122, 0.8826},
    {0, 25, 2, -1.4387, 0.9413},
    {0, 25, 3, -1.4198, 1.0193},
    {0, 25, 4, -1.3280, 1.0894},
    {0, 25, 5, -1.3022, 1.2050},
    {0, 25, 6, -1.2002, 1.3235},
    {0, 25, 7, -1.1663, 1.4853},
    {0, 25, 8, -1.0699, 1.7004},
    {0, 30, 0, -1.5247, 0.8075},
    {0, 30, 1, -1.5087, 0.8512},
    {0, 30, 2, -1.4520, 0.8963},
    {0, 30, 3, -1.4409, 0.9470},
    {0, 30, 4, -1.3699, 1.0123},
    {0, 30, 5, -1.3450, 1.0794},
    {0, 30, 6, -1.2652, 1.1492},
    {0, 30, 7, -1.2386, 1.2423},
    {0, 30, 8, -1.1572, 1.3485},
    {0, 40, 0, -1.5282, 0.7730},
    {0, 40, 1, -1.5238, 0.7924},
    {0, 40, 2, -1.4754, 0.8344},
    {0, 40, 3, -1.4681, 0.8752},
    {0, 40, 4, -1.4185, 0.9024},
    {0, 40, 5, -1.4014, 0.9534},
    {0, 40, 6, -1.3472, 1.0123},
    {0, 40, 7, -1.3293, 1.0304},
    {0, 40, 8, -1.2628, 1.1051},
    {0, 50, 0, -1.5230, 0.7635},
    {0, 50, 1, -1.5203, 0.7713},
    {0, 50, 2, -1.4832, 0.8045},
    {0, 50, 3, -1.4804, 0.8355},
    {0, 50, 4, -1.4391, 0.8699},
    {0, 50, 5, -1.4252, 0.8976},
    {0, 50, 6, -1.3883, 0.9244},
    {0, 50, 7, -1.3816, 0.9632},
    {0, 50, 8, -1.3337, 1.0028},
    {0, 60, 0, -1.5225, 0.7549},
    {0, 60, 1, -1.5233, 0.7756},
    {0, 60, 2, -1.4986, 0.7854},
    {0, 60, 3, -1.4918, 0.8147},
    {0, 60, 4, -1.4617, 0.8378},
    {0, 60, 5, -1.4513, 0.8522},
    {0, 60, 6, -1.4131, 0.8777},
    {0, 60, 7, -1.4102, 0.8997},
    {0, 60, 8, -1.3733, 0.9373},
    {0, 70, 0, -1.5311, 0.7452},
    {0, 70, 1, -1.5285, 0.7539},
    {0, 70, 2, -1.5041, 0.7652},
    {0, 70, 3, -1.4978, 0.7855},
    {0, 70, 4, -1.4714, 0.8017},
    {0, 70, 5, -1.4673, 0.8356},
    {0, 70, 6, -1.4350, 0.8610},
    {0, 70, 7, -1.4312, 0.8718},
    {0, 70, 8, -1.4014, 0.9072},
    {0, 80, 0, -1.5281, 0.7319},
    {0, 80, 1, -1.5262, 0.7593},
    {0, 80, 2, -1.4930, 0.7661},
    {0, 80, 3, -1.5070, 0.7799},
    {0, 80, 4, -1.4724, 0.8075},
    {0, 80, 5, -1.4766, 0.8054},
    {0, 80, 6, -1.4528, 0.8220},
    {0, 80, 7, -1.4447, 0.8409},
    {0, 80, 8, -1.4148, 0.8627},
    {0, 90, 0, -1.5280, 0.7398},
    {0, 90, 1, -1.5300, 0.7460},
    {0, 90, 2, -1.5050, 0.7614},
    {0, 90, 3, -1.5074, 0.7752},
    {0, 90, 4, -1.4898, 0.7873},
    {0, 90, 5, -1.4789, 0.8000},
    {0, 90, 6, -1.4632, 0.8181},
    {0, 90, 7, -1.4543, 0.8290},
    {0, 90, 8, -1.4367, 0.8419},
    {0, 100, 0, -1.5310, 0.7349},
    {0, 100, 1, -1.5264, 0.7501},
    {0, 100, 2, -1.5085, 0.7554},
    {0, 100, 3, -1.5033, 0.7601},
    {0, 100, 4, -1.4901, 0.7751},
    {0, 100, 5, -1.4875, 0.7890},
    {0, 100, 6, -1.4649, 0.8031},
    {0, 100, 7, -1.4674, 0.8123},
    {0, 100, 8, -1.4394, 0.8225},
    {1, 7, 0, -2.2119, 2.7961},
    {1, 8, 0, -2.1895, 1.9576},
    {1, 9, 0, -2.1798, 1.4938},
    {1, 9, 1, -2.2874, 4.0912},
    {1, 10, 0, -2.1643, 1.2340},
    {1, 10, 1, -2.1952, 2.2719},
    {1, 11, 0, -2.1645, 1.1426},
    {1, 11, 1, -2.1735, 1.6889},
    {1, 11, 2, -1.9237, 3.3659},
    {1, 12, 0, -2.1565, 1.0380},
    {1, 12, 1, -2.1683, 1.4490},
    {1, 12, 2, -1.9110, 2.1728},
    {1, 13, 0, -2.1641, 0.9905},
    {1, 13, 1, -2.1623, 1.2843},
    {1, 13, 2, -1.9170, 1.6581},
    {1, 13, 3, -1.9460, 4.1776},
    {1, 14, 0, -2.1605, 0.9150},
    {1, 14, 1, -2.1683, 1.1658},
    {1, 14, 2, -1.9291, 1.4023},
    {1, 14, 3, -1.9187, 2.5039},
    {1, 15, 0, -2.1650, 0.8905},
    {1, 15, 1, -2.1676, 1.0959},
    {1, 15, 2, -1.9548, 1.2747},
    {1, 15, 3, -1.9303, 1.9704},
    {1, 15, 4, -1.7460, 3.3507},
    {1, 20, 0, -2.1707, 0.7776},
    {1, 20, 1, -2.1648, 0.8778},
    {1, 20, 2, -2.0146, 0.9542},
    {1, 20, 3, -1.9939, 1.1764},
    {1, 20, 4, -1.8193, 1.3421},
    {1, 20, 5, -1.7760, 1.7546},
    {1, 20, 6, -1.6159, 2.3477},
    {1, 25, 0, -2.1656, 0.7208},
    {1, 25, 1, -2.1711, 0.7967},
    {1, 25, 2, -2.0607, 0.8479},
    {1, 25, 3, -2.0423, 0.9433},
    {1, 25, 4, -1.9160, 1.0528},
    {1, 25, 5, -1.8803, 1.2332},
    {1, 25, 6, -1.7367, 1.3712},
    {1, 25, 7, -1.6866, 1.6869},
    {1, 25, 8, -1.5545, 2.0289},
    {1, 30, 0, -2.1767, 0.6860},
    {1, 30, 1, -2.1677, 0.7405},
    {1, 30, 2, -2.0810, 0.7764},
    {1, 30, 3, -2.0756, 0.8551},
    {1, 30, 4, -1.9821, 0.9096},
    {1, 30, 5, -1.9525, 1.0169},
    {1, 30, 6, -1.8311, 1.1394},
    {1, 30, 7, -1.7965, 1.2582},
    {1, 30, 8, -1.6847, 1.4126},
    {1, 40, 0, -2.1753, 0.6564},
    {1, 40, 1, -2.1794, 0.6796},
    {1, 40, 2, -2.1121, 0.7083},
    {1, 40, 3, -2.1103, 0.7594},
    {1, 40, 4, -2.0336, 0.7966},
    {1, 40, 5, -2.0222, 0.8426},
    {1, 40, 6, -1.9474, 0.9024},
    {1, 40, 7, -1.9352, 0.9732},
    {1, 40, 8, -1.8490, 1.0439},
    {1, 50, 0, -2.1772, 0.6323},
    {1, 50, 1, -2.1758, 0.6620},
    {1, 50, 2, -2.1368, 0.6748},
    {1, 50, 3, -2.1232, 0.7112},
    {1, 50, 4, -2.0817, 0.7348},
    {1, 50, 5, -2.0665, 0.7683},
    {1, 50, 6, -2.0047, 0.8122},
    {1, 50, 7, -1.9944, 0.8431},
    {1, 50, 8, -1.9324, 0.8842},
    {1, 60, 0, -2.1783, 0.6195},
    {1, 60, 1, -2.1772, 0.6489},
    {1, 60, 2, -2.1351, 0.6572},
    {1, 60, 3, -2.1357, 0.6732},
    {1, 60, 4, -2.0903, 0.6990},
    {1, 60, 5, -2.0869, 0.7218},
    {1, 60, 6, -2.0434, 0.7502},
    {1, 60, 7, -2.0345, 0.7809},
    {1, 60, 8, -1.9857, 0.8127},
    {1, 70, 0, -2.1831, 0.6098},
    {1, 70, 1, -2.1780, 0.6217},
    {1, 70, 2, -2.1396, 0.6338},
    {1, 70, 3, -2.1410, 0.6501},
    {1, 70, 4, -2.1035, 0.6727},
    {1, 70, 5, -2.1107, 0.6837},
    {1, 70, 6, -2.0571, 0.7089},
    {1, 70, 7, -2.0614, 0.7298},
    {1, 70, 8, -2.0226, 0.7660},
    {1, 80, 0, -2.1744, 0.6121},
    {1, 80, 1, -2.1809, 0.6287},
    {1, 80, 2, -2.1477, 0.6335},
    {1, 80, 3, -2.1537, 0.6385},
    {1, 80, 4, -2.1213, 0.6568},
    {1, 80, 5, -2.1091, 0.6745},
    {1, 80, 6, -2.0782, 0.6846},
    {1, 80, 7, -2.0823, 0.7119},
    {1, 80, 8, -2.0469, 0.7336},
    {1, 90, 0, -2.1796, 0.6067},
    {1, 90, 1, -2.1852, 0.6089},
    {1, 90, 2, -2.1505, 0.6112},
    {1, 90, 3, -2.1547, 0.6317},
    {1, 90, 4, -2.1312, 0.6423},
    {1, 90, 5, -2.1244, 0.6558},
    {1, 90, 6, -2.0962, 0.6588},
    {1, 90, 7, -2.0991, 0.6860},
    {1, 90, 8, -2.0638, 0.7044},
    {1, 100, 0, -2.1778, 0.6078},
    {1, 100, 1, -2.1811, 0.6066},
    {1, 100, 2, -2.1572, 0.6165},
    {1, 100, 3, -2.1573, 0.6246},
    {1, 100, 4, -2.1310, 0.6290},
    {1, 100, 5, -2.1293, 0.6455},
    {1, 100, 6, -2.1028, 0.6547},
    {1, 100, 7, -2.1016, 0.6691},
    {1, 100, 8, -2.0782, 0.6832},
};

} // namespace pegls::detail
