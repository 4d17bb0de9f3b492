// Copyright 2026 the gtorus authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GTORUS_CALIBRATION_HPP_
#define GTORUS_CALIBRATION_HPP_

namespace gtorus::calibration {

inline constexpr char kVersion[] = "0.1.0";

// Constants below are pilot-frozen: measured once on exact summations and
// fixed here so that regressions are caught, not re-calibrated away.

// Degree identity: |sum p_r N_r - (4c log2 - 2c/N - a c/N^2)| * N^4 at the
// critical coupling stays below this for N >= 50 (a = 1 odd, 2 even).
// Pilot values: 0.18030 (N=101), 0.18033 (N=201), same magnitude even N.
inline constexpr double kDegreeResidualN4Cap = 0.36;

// Tolerance on residual ratios against the (N2/N1)^4 scaling law.
inline constexpr double kDegreeRatioTol = 0.25;

// Second-moment identity: N^2 sum N_r p_r^2 - 4 c^2 log N at the critical
// coupling, N in {50,...,400}. Pilot values: 0.09910..0.09934.
inline constexpr double kSecondMomentResidLo = 0.08;
inline constexpr double kSecondMomentResidHi = 0.12;

// Return probability: N^2 P^2(u,u) - 4 c^2 log N at the critical coupling,
// N in {50, 100, 200, 400}. Pilot values: 0.16334 (N=50) down to 0.11100
// (N=400); the drift is the 1/Z_N^2 finite-size correction.
inline constexpr double kReturnProbBandLo = 0.10;
inline constexpr double kReturnProbBandHi = 0.18;
inline constexpr double kReturnProbBandWidthMax = 0.06;

// Distributional surrogate: KS threshold between C_1 / n^{2/3} and gamma_1 at
// N = 150 (spec-frozen pilot artifact, not a paper rate).
inline constexpr double kComponentKsMax = 0.08;
inline constexpr double kComponentControlKsMin = 0.30;

// Rescaled-walk moment tolerances (drift and fluctuation limits):
// |mean + s^2/2| <= max(kMeanTolAbs * s^2, 4 sqrt(s/M)) and
// |variance - s| <= kVarTolRel * s.
inline constexpr double kMeanTolAbs = 0.1;
inline constexpr double kVarTolRel = 0.15;

// Branching tail bracket for K * P(max > K) at K = 50, N = 10^4.
inline constexpr double kTailBracketLo = 0.75;
inline constexpr double kTailBracketHi = 1.25;

// Walker uniformity: TV(v_j) at most this multiple of the paired uniform
// noise floor.
inline constexpr double kUniformityRatioMax = 1.5;

}  // namespace gtorus::calibration

#endif  // GTORUS_CALIBRATION_HPP_
