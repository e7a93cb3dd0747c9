/*
   Copyright 2025 The hecke-cf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#ifndef HECKE_IO_HPP
#define HECKE_IO_HPP

#include <string>

#include "json.hpp"

#include "hecke/cf.hpp"
#include "hecke/grammar.hpp"
#include "hecke/natural_ext.hpp"
#include "hecke/rosen.hpp"
#include "hecke/symbolic.hpp"

namespace hecke {

using Json = nlohmann::ordered_json;

/* Exact value input: a CF literal "[a0; ...]" (finite or periodic) or an expression in
   integers, decimals, l (lambda_q), r, R, sqrt(...), + - * / ^ and parentheses. */
Real parse_value(const std::string& s, int q);

std::string decimal(const Real& x, int digits = 20);

/* {"q", "kind", "coeffs", "quad", "interval"} with rationals as "num/den" strings. */
Json to_json(const Real& x, int prec = 0);
Real real_from_json(const Json& j);

Json to_json(const Lam& x);
Lam lam_from_json(int q, const Json& j);

/* {"q", "a0", "digits", "preperiod", "period", "kind", "truncated"} */
Json to_json(const CFExpansion& e);
CFExpansion cf_from_json(const Json& j);

Json to_json(const RewriteTrace& t);
Json to_json(const Moebius& m);

Symbol parse_symbol(const std::string& s);
/* {"q", "map", "alphabet", "rows"} */
Json to_json(const TransitionMatrix& m);
TransitionMatrix matrix_from_json(const Json& j);

Json to_json(const MarkovPartition& p, int prec = 0);
Json to_json(const Encoding& e);
Json to_json(const Reduction& r, int prec = 0);
Json to_json(const RosenExpansion& r);

}  // namespace hecke

#endif
