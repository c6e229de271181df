#include "conestab/report.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <ctime>
#include <exception>
#include <optional>
#include <sstream>
#include <thread>

#include "conestab/errors.hpp"

namespace conestab {

ScanTable scan(const ScanOptions& options) {
  if (options.n < 2) throw Error(ErrorKind::usage, "scan needs n ≥ 2");
  if (options.jobs < 1) throw Error(ErrorKind::usage, "jobs must be positive");
  const int count = options.n - 1;
  std::vector<std::optional<StabilityReport>> rows(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < count; i = next++) {
      try {
        const int k = i + 1;
        const auto cone = solve_cross_section(k, options.n - k, options.solve);
        rows[i] = stability_verdict(cone, options.stability);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min(options.jobs, count);
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScanTable table;
  table.n = options.n;
  table.options = options;
  table.timestamp = utc_timestamp();
  for (auto& r : rows) table.rows.push_back(std::move(*r));
  return table;
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_csv(const ScanTable& table) {
  std::ostringstream os;
  os << "# schema " << kCsvSchema << " conestab " << kVersion << " weight "
     << to_string(table.options.stability.weight) << " tol " << num(table.options.stability.tol)
     << " gridN " << table.options.stability.gridN << "\n";
  os << "# generated " << table.timestamp << "\n";
  os << "k,h,n,theta_star,H,Lambda,threshold,verdict,L,B_a4,alpha_min,alpha_max,criterion37\n";
  for (const auto& r : table.rows) {
    os << r.k << ',' << r.h << ',' << r.n << ',' << num(r.theta_star) << ',' << num(r.H) << ','
       << num(r.Lambda) << ',' << num(r.threshold) << ',' << to_string(r.verdict) << ',';
    const auto* w = r.window_for(r.selected_weight);
    if (w) {
      os << num(r.L) << ',' << num(r.B_a4) << ',' << num(w->window.alpha_min) << ','
         << num(w->window.alpha_max);
    } else {
      os << ",,,";
    }
    os << ',' << (r.criterion37_fired ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace conestab
