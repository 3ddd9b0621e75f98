// csv_io.hpp -- CSV and JSON emission.  Reals are printed with 17
// significant digits so identical runs produce byte-identical files.
#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "birkhoff/complexprod.hpp"
#include "birkhoff/distribution.hpp"
#include "birkhoff/renorm.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_trace_csv(std::ostream& os, const sum_trace& tr) {
  nlohmann::json meta{{"rotation", tr.meta.rotation},
                      {"observable", tr.meta.observable},
                      {"x0", tr.meta.x0},
                      {"K", tr.meta.K}};
  os << "# " << meta.dump() << "\n";
  os << "k,S_k,S_k_over_log_k\n";
  for (std::size_t i = 0; i < tr.values.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i + 1);
    os << k << ',' << fmt17(tr.values[i]) << ',';
    if (k >= 2) os << fmt17(tr.values[i] / std::log(static_cast<double>(k)));
    os << '\n';
  }
}

inline void write_step_csv(std::ostream& os, const step_function& f) {
  os << "x_left,value\n";
  for (std::int64_t k = 0; k < f.q; ++k)
    os << fmt17(static_cast<double>(k) / static_cast<double>(f.q)) << ','
       << fmt17(f.vals[static_cast<std::size_t>(k)]) << '\n';
}

inline void write_histogram_csv(std::ostream& os, const histogram& h) {
  const auto p = h.normalized();
  const double width = (h.hi - h.lo) / h.bins;
  os << "bin_center,normalized_density\n";
  for (int i = 0; i < h.bins; ++i)
    os << fmt17(h.bin_center(i)) << ','
       << fmt17(p[static_cast<std::size_t>(i)] / width) << '\n';
}

inline void write_fourier_csv(std::ostream& os, const fourier_coeffs& fc) {
  os << "m,re,im,modulus\n";
  for (int m = 0; m <= fc.m_max; ++m) {
    const auto& z = fc.coeffs[static_cast<std::size_t>(m)];
    os << m << ',' << fmt17(z.real()) << ',' << fmt17(z.imag()) << ','
       << fmt17(std::abs(z)) << '\n';
  }
}

inline void write_complex_csv(std::ostream& os, const complex_step_function& F) {
  os << "x_left,re,im\n";
  for (std::int64_t k = 0; k < F.q; ++k) {
    const auto z = F.value(k);
    os << fmt17(static_cast<double>(k) / static_cast<double>(F.q)) << ','
       << fmt17(z.real()) << ',' << fmt17(z.imag()) << '\n';
  }
}

inline void write_convergent_sums_csv(std::ostream& os,
                                      const std::vector<convergent_sums>& rows) {
  os << "n,q_n,S_qn,S_qn_minus_1\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.q.str() << ',' << fmt17(r.S_qn) << ','
       << fmt17(r.S_qn_minus_1) << '\n';
}

}  // namespace birkhoff
