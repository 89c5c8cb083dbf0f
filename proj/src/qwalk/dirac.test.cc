// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qwalk/dirac.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = 1.0 / std::sqrt(2.0);
const Complex I{0.0, 1.0};

struct BesselRow {
    Complex z, k0, k1;
};

// Reference values from a 30-digit arbitrary-precision evaluation, on
// |z| in {0.05, 0.3, 1, 1.99, 2.01, 4, 9, 20, 50} and arg z in {-1.4, -0.7,
// 0, 0.5, 1.2, 1.5}.
const BesselRow kBesselTable[] = {
    {{0.0084983571450120525, -0.049272486499423014}, {3.1095358533859434, 1.3983150965943161}, {3.3495317481328937, 19.791999241959648}},
    {{0.038242109364224425, -0.032210884361884552}, {3.1125313018528651, 0.69754174664586543}, {15.216523601403892, 12.929168623146177}},
    {{0.050000000000000003, 0}, {3.1142340294719899, 0}, {19.909674325882506, 0}},
    {{0.043879128094518639, 0.023971276930210152}, {3.1133150692381677, -0.49800601102245201}, {17.466413785556146, -9.6208628029701782}},
    {{0.018117887723833683, 0.046601954298361316}, {3.1102753623933697, -1.1977116151381979}, {7.1865107600981606, -18.714059608114709}},
    {{0.0035368600833851458, 0.049874749330202722}, {3.1092524079963484, -1.4987094997313195}, {1.3709696325212597, -20.037281663756101}},
    {{0.050990142870072308, -0.29563491899653804}, {1.2814392714705445, 1.3531959708790045}, {0.31737930100907907, 3.5155371718626243}},
    {{0.22945265618534652, -0.1932653061713073}, {1.3439897952131463, 0.65103635993972009}, {2.274229120398954, 2.2472833639865217}},
    {{0.29999999999999999, 0}, {1.3724600605442974, 0}, {3.0559920334573252, 0}},
    {{0.26327476856711179, 0.1438276615812609}, {1.3574815403251179, -0.46180427342357194}, {2.6486157292504693, -1.6674227308584488}},
    {{0.10870732634300208, 0.27961172579016791}, {1.2995323034611268, -1.1452008988900657}, {0.94594275119582139, -3.2958901711706781}},
    {{0.021221160500310872, 0.29924849598121633}, {1.2732805645291065, -1.4595027544751944}, {-0.0045828272466113661, -3.577677953943577}},
    {{0.16996714290024104, -0.98544972998846014}, {-0.023839484773696181, 1.0086483564168718}, {-0.459838981508643, 1.1387780671406207}},
    {{0.7648421872844885, -0.64421768723769102}, {0.31500611287592833, 0.43665845564657407}, {0.31415585874527735, 0.67066033483512666}},
    {{1, 0}, {0.42102443824070834, 0}, {0.60190723019723458, 0}},
    {{0.87758256189037276, 0.47942553860420301}, {0.3676278616049829, -0.30624685889081033}, {0.45330554171764376, -0.49442871022842527}},
    {{0.36235775447667362, 0.93203908596722629}, {0.097293461539336615, -0.81677203904984519}, {-0.2022937585988335, -1.0269701317797673}},
    {{0.070737201667702906, 0.99749498660405445}, {-0.090140438090035052, -1.1180162358581638}, {-0.59467926810291094, -1.1908867103647545}},
    {{0.33823461437147961, -1.9610449626770357}, {-0.53426753486163758, 0.31594177878254975}, {-0.6407019473064467, 0.2122939423099231}},
    {{1.522035952696132, -1.2819931976030052}, {-0.0058116838226533211, 0.18548047434005502}, {-0.03290234088649166, 0.21882806135503396}},
    {{1.99, 0}, {0.1153017675517768, 0}, {0.14171756162240132, 0}},
    {{1.7463892981618416, 0.95405682182236395}, {0.055940166986084297, -0.13670078995263898}, {0.053347357637942884, -0.17062215302810715}},
    {{0.72109193140858052, 1.8547577810747804}, {-0.31149021006578981, -0.28136738297317332}, {-0.40354270725276026, -0.24422107572565308}},
    {{0.14076703131872878, 1.9850150233420683}, {-0.67988323560690977, -0.33896630703281488}, {-0.78816223013494224, -0.19132871648172628}},
    {{0.34163395722948442, -1.9807539572768047}, {-0.536142388746365, 0.30263637765390239}, {-0.63858151867089319, 0.19863914725667434}},
    {{1.5373327964418215, -1.2948775513477588}, {-0.0080803127370034609, 0.18173552903983997}, {-0.034822887084360189, 0.21376695761838294}},
    {{2.0099999999999998, 0}, {0.11250436099872804, 0}, {0.13804087731920769, 0}},
    {{1.763940949399649, 0.96364533259444796}, {0.053409384965233661, -0.13423540005198209}, {0.050569410004660052, -0.16708020387578687}},
    {{0.72833908649811385, 1.8733985627941248}, {-0.31302668810542705, -0.27212261563737267}, {-0.40240829910941894, -0.23400340416730933}},
    {{0.14218177535208285, 2.0049649230741493}, {-0.68242796301934439, -0.32300501806848042}, {-0.78593081810679222, -0.17543710406909843}},
    {{0.67986857160096414, -3.9417989199538406}, {-0.031272215470595631, -0.31332292901344494}, {0.0052881599453159771, -0.32562895719247914}},
    {{3.059368749137954, -2.5768707489507641}, {-0.027965540984410783, 0.0065991320389675199}, {-0.031077183462080632, 0.0051419198976015807}},
    {{4, 0}, {0.011159676085853025, 0}, {0.012483498887268431, 0}},
    {{3.510330247561491, 1.917702154416812}, {-0.010073893060374222, -0.015227424517657594}, {-0.011973678826289691, -0.01628586087868461}},
    {{1.4494310179066945, 3.7281563438689052}, {-0.057923959092820131, 0.13306431021730597}, {-0.046027108786208241, 0.14607150635449093}},
    {{0.28294880667081163, 3.9899799464162178}, {-0.0010583156620990954, 0.46958109465297077}, {0.056259088845251645, 0.47707060549338304}},
    {{1.5297042861021692, -8.8690475698961411}, {-0.089443061936208434, -0.011776148650685742}, {-0.089771494100069849, -0.016742358758957569}},
    {{6.8835796855603961, -5.7979591851392192}, {0.00041918912375869149, -6.0563331666879354e-05}, {0.00043894795022751318, -4.8694380842749628e-05}},
    {{9, 0}, {5.0881312956459246e-05, 0}, {5.3637016379451948e-05, 0}},
    {{7.8982430570133548, 4.314829847437827}, {-2.3467560954181086e-05, 0.00015153459527838679}, {-2.0730935462835076e-05, 0.00015939739903461623}},
    {{3.2612197902900624, 8.3883517737050362}, {-0.014352077872096546, -0.0069120458166048639}, {-0.015005523277436131, -0.0063305294413601373}},
    {{0.63663481500932617, 8.9774548794364897}, {-0.21150027417946854, 0.062886877147895578}, {-0.20918007859320853, 0.074868191431077785}},
    {{3.3993428580048204, -19.708994599769202}, {0.00016318151817774126, 0.0093462963815974746}, {-6.5238224687323937e-05, 0.0093926839490690948}},
    {{15.296843745689769, -12.88435374475382}, {4.9932214832305263e-08, 3.9082038516460391e-08}, {5.0266069381411558e-08, 4.0616439869102757e-08}},
    {{20, 0}, {5.7412378153365248e-10, 0}, {5.8830579695570384e-10, 0}},
    {{17.551651237807455, 9.5885107720840601}, {-6.093655453112215e-09, 2.6547278458033187e-09}, {-6.195168868892171e-09, 2.7840498531925028e-09}},
    {{7.2471550895334724, 18.640781719344528}, {0.00018450607776673261, -7.4875302289894224e-05}, {0.000184489007506891, -7.9828964572851736e-05}},
    {{1.4147440333540582, 19.949899732081089}, {-0.018372038982610511, -0.065530068215395976}, {-0.020040418137890259, -0.065208869993582594}},
    {{8.4983571450120508, -49.27248649942301}, {3.45424608687987e-05, -1.051329754761958e-05}, {3.4706199522879653e-05, -1.0191865969703898e-05}},
    {{38.242109364224426, -32.210884361884553}, {1.807024355469072e-18, 3.9670537616206277e-18}, {1.7954646454655432e-18, 4.0089135324271466e-18}},
    {{50, 0}, {3.4101677497894956e-23, 0}, {3.4441022267175555e-23, 0}},
    {{43.879128094518634, 23.971276930210148}, {9.4988941726947477e-21, 1.2285946084695652e-20}, {9.640395949279165e-21, 1.2348284830841468e-20}},
    {{18.117887723833682, 46.601954298361314}, {-2.390164539987131e-09, 1.8140566297142996e-10}, {-2.3972268937665644e-09, 2.0426508592073152e-10}},
    {{3.5368600833851453, 49.874749330202718}, {0.0048328226533265461, -0.0018013276270145192}, {0.0048185256188341035, -0.001850858954960542}},
};

double rel(Complex got, Complex want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST(dirac, bessel_k_reference_table) {
    for (const auto &row : kBesselTable) {
        ASSERT_LT(rel(bessel_k(0, row.z), row.k0), 1e-8) << row.z;
        ASSERT_LT(rel(bessel_k(1, row.z), row.k1), 1e-8) << row.z;
    }
}

TEST(dirac, bessel_k_real_values) {
    ASSERT_NEAR(bessel_k(0, 1.0).real(), 0.421024438240708333, 1e-13);
    ASSERT_NEAR(bessel_k(1, 1.0).real(), 0.601907230197234575, 1e-13);
    ASSERT_EQ(bessel_k(0, 3.0).imag(), 0.0);
}

TEST(dirac, bessel_wronskian) {
    for (double r : {0.1, 0.9, 1.7}) {
        for (double arg : {-1.2, 0.0, 0.4, 1.5}) {
            Complex z = std::polar(r, arg);
            Complex w = bessel_i(0, z) * bessel_k(1, z) + bessel_i(1, z) * bessel_k(0, z);
            ASSERT_LT(rel(w, 1.0 / z), 1e-12) << z;
        }
    }
}

TEST(dirac, bessel_k0_derivative) {
    const double h = 1e-5;
    for (Complex z : {Complex(0.5, 0.2), Complex(1.5, -1.0), Complex(3.0, 2.0), Complex(8.0, 0.5)}) {
        Complex d = (bessel_k(0, z + h) - bessel_k(0, z - h)) / (2 * h);
        ASSERT_LT(rel(d, -bessel_k(1, z)), 1e-8) << z;
    }
}

TEST(dirac, bessel_domain) {
    ASSERT_THROW(bessel_k(0, 0.0), std::domain_error);
    ASSERT_THROW(bessel_k(1, -1.0), std::domain_error);
    ASSERT_THROW(bessel_k(0, Complex(-3.0, 1.0)), std::domain_error);
    ASSERT_THROW(bessel_k(2, 1.0), std::invalid_argument);
}

TEST(dirac, mass_values) {
    ASSERT_NEAR(mass_of_theta(kPi / 4), 1.1357, 5e-4);
    ASSERT_NEAR(mass_of_theta(kPi / 10), 0.3305, 5e-4);
    ASSERT_NEAR(mass_of_theta(kPi / 20), 0.1590, 5e-4);
    ASSERT_EQ(mass_of_theta(0.0), 0.0);
    double prev = 0.0;
    for (int k = 1; k < 100; ++k) {
        double m = mass_of_theta(k * 0.014);
        ASSERT_GT(m, prev);
        prev = m;
    }
    ASSERT_THROW(mass_of_theta(1.5), std::domain_error);
}

TEST(dirac, density_is_even_in_x) {
    const double m = mass_of_theta(kPi / 20);
    for (double t : {0.0, 1.0, 3.0, 5.0}) {
        for (double x : {0.3, 1.0, 2.7, 4.9, 6.2}) {
            ASSERT_NEAR(dirac_density(m, 0.4, t, x), dirac_density(m, 0.4, t, -x), 1e-10) << t << " " << x;
        }
    }
}

TEST(dirac, density_normalizes) {
    for (double theta2 : {kPi / 20, kPi / 10, kPi / 4}) {
        const double m = mass_of_theta(theta2);
        for (double t : {0.0, 3.0, 5.0}) {
            ASSERT_NEAR(dirac_mass_between(m, 0.4, t, -200.0, 200.0), 1.0, 1e-4) << theta2 << " " << t;
        }
    }
}

TEST(dirac, spinor_rejects_bad_parameters) {
    ASSERT_THROW(dirac_spinor({0.0, 0.4, 1.0, 0.0}), std::invalid_argument);
    ASSERT_THROW(dirac_spinor({0.2, 0.0, 1.0, 0.0}), std::invalid_argument);
}

TEST(dirac, comparison_structure) {
    auto cmp = compare_dca_dirac(kPi / 20, 0.4, 5, kH, I * kH);
    ASSERT_EQ(cmp.rows.size(), 6u);
    ASSERT_EQ(cmp.rows.front().x, -5);
    double dca = 0.0, cells = cmp.dirac_tail;
    for (const auto &r : cmp.rows) {
        dca += r.p_dca;
        cells += r.dirac_cell;
    }
    ASSERT_NEAR(dca, 1.0, 1e-12);
    ASSERT_NEAR(cells, 1.0, 1e-4);
    ASSERT_GE(cmp.tv_distance, 0.0);
    ASSERT_LE(cmp.tv_distance, 1.0);
}

TEST(dirac, frozen_tv_baselines) {
    // Regression values from the first verified run; width 0.4, theta2 = pi/20.
    ASSERT_NEAR(compare_dca_dirac(kPi / 20, 0.4, 3, kH, I * kH).tv_distance, 0.2318819719, 1e-9);
    ASSERT_NEAR(compare_dca_dirac(kPi / 20, 0.4, 5, kH, I * kH).tv_distance, 0.252192643444, 1e-9);
}
