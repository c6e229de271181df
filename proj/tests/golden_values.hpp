#pragma once

// Reference values from tests/oracles/cone_oracle.py (hypergeometric
// profile at 30 digits, DOP853 shooting for Lambda).

namespace golden {

struct ConeRow {
  int n, k, h;
  double theta_star, H, Lambda;
};

inline constexpr ConeRow kCones[] = {
    {3, 1, 2, 1.5707963267948966, 0.0, 0.0},
    {3, 2, 1, 0.9855147378623155, 1.50887956153832, 1.6731316676328762},
    {4, 1, 3, 1.5707963267948966, 0.0, 0.0},
    {4, 2, 2, 1.1406591534203234, 1.7208733722513565, 2.6050299336302793},
    {4, 3, 1, 0.7853981633974483, 2.0, 2.687007666767994},
    {5, 1, 4, 1.5707963267948966, 0.0, 0.0},
    {5, 2, 3, 1.2156975306434739, 1.955109273050478, 3.5763910944740394},
    {5, 3, 2, 0.9553166181245093, 2.1213203435596424, 3.624365633583928},
    {5, 4, 1, 0.6727954726096526, 2.3904431514892286, 3.6929586647080765},
    {6, 1, 5, 1.5707963267948966, 0.0, 0.0},
    {6, 2, 4, 1.2617675987075911, 2.1745029757830294, 4.56089337128537},
    {6, 3, 3, 1.0471975511965979, 2.309401076758503, 4.596818473528568},
    {6, 4, 2, 0.8399707073410043, 2.4502943297335045, 4.633616404370774},
    {6, 5, 1, 0.5980309470430782, 2.7250001545328533, 4.696280185618724},
    {7, 1, 6, 1.5707963267948966, 0.0, 0.0},
    {7, 2, 5, 1.2936515077540687, 2.3775013974163772, 5.551251329309466},
    {7, 3, 4, 1.1071487177940904, 2.5, 5.581265624856841},
    {7, 4, 3, 0.9363576332004185, 2.6045755582862844, 5.607194457431602},
    {7, 5, 2, 0.7587869695609621, 2.737890466172358, 5.639106633141706},
    {7, 6, 1, 0.5437286919825985, 3.0225473540555363, 5.69840221776638},
    {8, 1, 7, 1.5707963267948966, 0.0, 0.0},
    {8, 2, 6, 1.3173760167061486, 2.566234142977512, 6.544696303675903},
    {8, 3, 5, 1.1502619915109316, 2.6832815729997477, 6.571263568352215},
    {8, 4, 4, 1.0018140161969664, 2.772316781124488, 6.591979402999947},
    {8, 5, 3, 0.8554371830421481, 2.865792480997989, 6.613599980201815},
    {8, 6, 2, 0.6975244088080883, 2.997101923208148, 6.642756205048791},
    {8, 7, 1, 0.501975308794498, 3.2932205792561104, 6.699875841569078},
};

}  // namespace golden
