#include "hetbandit/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

#include "hetbandit/config_io.hpp"

namespace hetbandit {

void write_curves_csv(const AggregateResult& result, std::ostream& out) {
  out << "step,policy,mean_cumulative_regret,standard_error\n";
  for (std::uint64_t t = 0; t < result.horizon; ++t) {
    for (const auto& curve : result.curves) {
      out << (t + 1) << ',' << policy_name(curve.policy) << ',' << format_csv(curve.mean[t]) << ','
          << format_csv(curve.standard_error[t]) << '\n';
    }
  }
}

void write_summary_csv(const AggregateResult& result, std::ostream& out) {
  out << "policy,final_mean_regret,final_se,trials,horizon,seed\n";
  for (const auto& curve : result.curves) {
    out << policy_name(curve.policy) << ',' << format_csv(curve.final_mean()) << ','
        << format_csv(curve.final_se()) << ',' << result.trials << ',' << result.horizon << ','
        << result.master_seed << '\n';
  }
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace hetbandit
