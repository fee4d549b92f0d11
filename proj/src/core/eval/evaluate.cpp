#include "core/eval/evaluate.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "core/dom/generators.hpp"

namespace asnets::eval {

CoverageReport evaluate(const ParameterStore& store, std::vector<ProblemContext>& problems,
                        const EvalConfig& cfg) {
  CoverageReport report;
  report.problems.resize(problems.size());

  for (size_t pi = 0; pi < problems.size(); ++pi) {
    ProblemCoverage& cov = report.problems[pi];
    cov.name = problems[pi].gp->problem_name;
    cov.attempts = cfg.rollouts_per_problem;
    std::vector<double> costs(cfg.rollouts_per_problem, -1.0);

    auto run_range = [&](int lo, int hi) {
      for (int r = lo; r < hi; ++r) {
        Rng rng(mix_seed(cfg.seed, pi, static_cast<uint64_t>(r)));
        train::RolloutRecord rec = train::run_policy(store, problems[pi], problems[pi].gp->s0,
                                                     rng, cfg.step_limit, cfg.mode);
        if (rec.reached_goal) costs[r] = rec.cost;
      }
    };
    if (cfg.jobs <= 1) {
      run_range(0, cfg.rollouts_per_problem);
    } else {
      const int jobs = std::min(cfg.jobs, cfg.rollouts_per_problem);
      std::vector<std::thread> pool;
      const int chunk = (cfg.rollouts_per_problem + jobs - 1) / jobs;
      for (int j = 0; j < jobs; ++j)
        pool.emplace_back(run_range, j * chunk,
                          std::min(cfg.rollouts_per_problem, (j + 1) * chunk));
      for (auto& t : pool) t.join();
    }

    double sum = 0.0;
    for (double c : costs)
      if (c >= 0) {
        ++cov.successes;
        sum += c;
      }
    if (cov.successes > 0) {
      cov.mean_cost = sum / cov.successes;
      double var = 0.0;
      for (double c : costs)
        if (c >= 0) var += (c - cov.mean_cost) * (c - cov.mean_cost);
      if (cov.successes > 1) {
        double sd = std::sqrt(var / (cov.successes - 1));
        cov.ci_half = 1.96 * sd / std::sqrt(static_cast<double>(cov.successes));
      }
    }
    report.cumulative += static_cast<double>(cov.successes) / cov.attempts;
  }
  return report;
}

double cumulative_coverage(const std::vector<std::pair<int, int>>& successes_attempts) {
  double total = 0.0;
  for (const auto& [s, n] : successes_attempts)
    total += n > 0 ? static_cast<double>(s) / n : 0.0;
  return total;
}

std::string coverage_json(const CoverageReport& report) {
  std::ostringstream os;
  os << "{\"problems\":[";
  for (size_t i = 0; i < report.problems.size(); ++i) {
    const auto& p = report.problems[i];
    if (i) os << ",";
    os << "{\"name\":\"" << p.name << "\",\"successes\":" << p.successes
       << ",\"attempts\":" << p.attempts << ",\"mean_cost\":" << p.mean_cost
       << ",\"ci95_half_width\":" << p.ci_half << "}";
  }
  os << "],\"cumulative_coverage\":" << report.cumulative << "}";
  return os.str();
}

std::string coverage_table(const CoverageReport& report) {
  std::ostringstream os;
  os << "problem                          cover   mean cost (95% CI)\n";
  for (const auto& p : report.problems) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-32s %2d/%-2d   %.2f +/- %.2f\n", p.name.c_str(),
                  p.successes, p.attempts, p.mean_cost, p.ci_half);
    os << buf;
  }
  char buf[80];
  std::snprintf(buf, sizeof(buf), "cumulative coverage: %.4f / %zu\n", report.cumulative,
                report.problems.size());
  os << buf;
  return os.str();
}

}  // namespace asnets::eval
