// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "slspec/certificates.hpp"
#include "slspec/richardson.hpp"
#include "slspec/spectrum.hpp"

namespace slspec {

/// Shortest decimal string that parses back to the same double; "nan", "inf", "-inf" otherwise.
[[nodiscard]] std::string format_double(double v);

// Non-finite doubles become JSON null.
[[nodiscard]] nlohmann::json to_json(const EigenRecord& r);
[[nodiscard]] nlohmann::json to_json(const ScanResult& s);
[[nodiscard]] nlohmann::json to_json(const RichardsonReport& r);
[[nodiscard]] nlohmann::json to_json(const BoundCertificate& c);
[[nodiscard]] nlohmann::json to_json(const Classification& c);
[[nodiscard]] nlohmann::json to_json(const DriftResult& d);

/// Header "re,im,zeros_in_ab,weighted_norm,residual,double_root", one row per record.
[[nodiscard]] std::string records_to_csv(const std::vector<EigenRecord>& records);
/// Header "kind,bound,direction,valid,condition,value,pass", one row per trail entry.
[[nodiscard]] std::string certificates_to_csv(const std::vector<BoundCertificate>& certs);
[[nodiscard]] std::string classification_to_csv(const Classification& c);
[[nodiscard]] std::string richardson_to_csv(const RichardsonReport& r);
[[nodiscard]] std::string drift_to_csv(const DriftResult& d);

}  // namespace slspec
