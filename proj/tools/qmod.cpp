// qmod: command-line front end for the quivermod library.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict, 2 usage or
// validation error, 3 budget exceeded.

#include "quivermod/quivermod.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#ifndef QUIVERMOD_VERSION
#define QUIVERMOD_VERSION "0.0.0"
#endif

namespace {

using namespace quivermod;
using io::json;

enum Exit { ok = 0, negative = 1, invalid = 2, budget = 3 };

struct Options {
  std::string quiver;
  std::string format = "text";
  unsigned jobs = 1;
  std::uint64_t subspace_budget = 10'000'000;
  std::uint64_t seed = 1;
  std::string alpha, beta, theta;
  std::int64_t total = 0;
  std::vector<std::string> reps;
  std::vector<std::string> sigmas;
  std::vector<std::int64_t> multiplicities;
  std::vector<std::uint64_t> primes;
  std::int64_t z = 1;
  std::int64_t n = 1;
  std::size_t max_len = 2;
  std::optional<std::size_t> path_bound;
  std::size_t loop_len = 2;
  bool assert_stable = false;
};

struct Report {
  int code = ok;
  json result = json::object();
  std::vector<std::string> lines;
};

std::vector<std::int64_t> parse_ints(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw ValidationError(std::string(what) + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError(std::string(what) + " is empty");
  return out;
}

DimVector dim_arg(const std::string& text, const Quiver& q, const char* what) {
  if (text.empty()) throw ValidationError(std::string("--") + what + " is required");
  DimVector v(parse_ints(text, what));
  require_length(q, v, what);
  return v;
}

Weight weight_arg(const std::string& text, const Quiver& q) {
  if (text.empty()) throw ValidationError("--theta is required");
  Weight w(parse_ints(text, "theta"));
  require_length(q, w, "theta");
  return w;
}

std::string show(const std::vector<std::int64_t>& v) { return format_vector(v); }

std::string show_matrix(const Matrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? "; " : "";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + format_scalar(m(r, c));
  }
  return out + "]";
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  QuiverPtr quiver() {
    if (!quiver_) {
      if (o_.quiver.empty()) throw ValidationError("--quiver is required");
      quiver_ = io::load_quiver(o_.quiver);
    }
    return quiver_;
  }

  OracleConfig oracle() const {
    OracleConfig c;
    c.subspace_budget = o_.subspace_budget;
    c.jobs = o_.jobs;
    return c;
  }

  Representation rep(std::size_t i = 0) {
    if (o_.reps.size() <= i) throw ValidationError("--rep is required");
    return io::load_representation(o_.reps[i], quiver());
  }

  std::vector<SigmaMorphism> sigmas(const Quiver& q) {
    std::vector<SigmaMorphism> out;
    for (const auto& path : o_.sigmas) out.push_back(io::load_sigma(path, q));
    return out;
  }

  Report paths() {
    auto q = quiver();
    Report r;
    json list = json::array();
    for (const auto& p : enumerate_paths(*q, o_.path_bound)) {
      const std::string shown = format_path(*q, p);
      list.push_back({{"path", shown}, {"src", p.source + 1}, {"tgt", p.target + 1}, {"length", p.length()}});
      r.lines.push_back(shown + "  (" + std::to_string(p.source + 1) + " -> " + std::to_string(p.target + 1) + ")");
    }
    r.result = {{"count", list.size()}, {"paths", list}};
    r.lines.push_back(std::to_string(list.size()) + " paths");
    return r;
  }

  Report euler() {
    auto q = quiver();
    const auto a = dim_arg(o_.alpha, *q, "alpha");
    const auto b = dim_arg(o_.beta, *q, "beta");
    Report r;
    const auto value = euler_form(*q, a, b);
    r.result = {{"alpha", a.entries()}, {"beta", b.entries()}, {"euler_form", value}};
    r.lines.push_back(std::to_string(value));
    return r;
  }

  Report dimvecs() {
    auto q = quiver();
    const auto theta = weight_arg(o_.theta, *q);
    Report r;
    json list = json::array();
    for (const auto& d : enumerate_dimvectors(*q, o_.total, theta)) {
      list.push_back(d.entries());
      r.lines.push_back(show(d.entries()));
    }
    r.result = {{"total", o_.total}, {"theta", theta.entries()}, {"dimvectors", list}};
    r.lines.push_back(std::to_string(list.size()) + " dimension vectors");
    return r;
  }

  Report nonempty(bool stable) {
    auto q = quiver();
    const auto alpha = dim_arg(o_.alpha, *q, "alpha");
    const auto theta = weight_arg(o_.theta, *q);
    GenericExtTable table(q);
    Report r;
    const bool ss = semistable_nonempty(table, alpha, theta);
    json subs = json::array();
    for (const auto& b : table.generic_subdimvectors(alpha)) subs.push_back(b.entries());
    r.result = {{"alpha", alpha.entries()}, {"theta", theta.entries()}, {"semistable_nonempty", ss},
                {"generic_subs", subs}};
    bool verdict = ss;
    if (stable) {
      verdict = stable_nonempty(table, alpha, theta);
      r.result["stable_nonempty"] = verdict;
    }
    const char* name = stable ? "stable_nonempty" : "semistable_nonempty";
    r.lines.push_back(std::string(name) + ": " + (verdict ? "true" : "false"));
    r.lines.push_back("generic subdimension vectors: " + std::to_string(subs.size()));
    if (!verdict) {
      r.code = negative;
      std::string reason;
      const auto value = theta_pairing(theta, alpha);
      if (value != 0) {
        reason = "theta(alpha) = " + std::to_string(value) + " is not zero";
      } else {
        for (const auto& b : table.generic_subdimvectors(alpha)) {
          const auto tb = theta_pairing(theta, b);
          const bool proper = !b.is_zero() && b != alpha;
          if (tb < 0 || (stable && proper && tb == 0)) {
            reason = "generic subdimension vector " + show(b.entries()) + " has theta = " + std::to_string(tb);
            break;
          }
        }
      }
      r.result["reason"] = reason;
      r.lines.push_back("reason: " + reason);
    }
    return r;
  }

  Report dim() {
    auto q = quiver();
    const auto alpha = dim_arg(o_.alpha, *q, "alpha");
    const auto theta = weight_arg(o_.theta, *q);
    GenericExtTable table(q);
    Report r;
    r.result = {{"alpha", alpha.entries()}, {"theta", theta.entries()}};
    if (alpha.is_zero()) throw ValidationError("moduli dimension is undefined for alpha = 0");
    const auto d = moduli_dimension(table, alpha, theta);
    r.result["stable_nonempty"] = d.has_value();
    if (d) {
      r.result["dimension"] = *d;
      r.lines.push_back(std::to_string(*d));
    } else {
      r.code = negative;
      r.result["dimension"] = nullptr;
      r.result["reason"] = "stable locus is empty";
      r.lines.push_back("undefined: stable locus is empty");
    }
    return r;
  }

  static json witness_json(const SubrepWitness& w, const Field& f) { return io::to_json(w, f); }

  Report check(bool stable) {
    auto q = quiver();
    auto m = rep();
    const auto theta = weight_arg(o_.theta, *q);
    Report r;
    r.result = {{"theta", theta.entries()}, {"field", io::to_json(m.field())}, {"dim", m.dim().entries()}};
    if (m.field().is_prime()) {
      const auto p = m.field().characteristic();
      for (auto listed : o_.primes) {
        if (listed != p) {
          throw ValidationError("representation is over F_" + std::to_string(p) + " but --primes lists " +
                                std::to_string(listed));
        }
      }
      auto v = stable ? is_stable(m, theta, oracle()) : is_semistable(m, theta, oracle());
      r.result["verdict"] = v.holds ? (stable ? "stable" : "semistable") : (stable ? "not_stable" : "not_semistable");
      r.result["certainty"] = "proof";
      r.result["theta_of_M"] = v.theta_of_m;
      r.result["primes_tested"] = json::array({p});
      r.result["budget_used"] = v.budget_used;
      r.lines.push_back(r.result["verdict"].get<std::string>() + " over F_" + std::to_string(p));
      if (!v.holds) {
        r.code = negative;
        if (v.witness) {
          r.result["witness"] = witness_json(*v.witness, m.field());
          r.lines.push_back("witness beta = " + show(v.witness->sub.beta.entries()) +
                            ", theta = " + std::to_string(v.witness->theta_value));
        }
        if (!v.reason.empty()) {
          r.result["reason"] = v.reason;
          r.lines.push_back("reason: " + v.reason);
        }
      }
      return r;
    }

    std::vector<std::uint64_t> primes = o_.primes;
    if (primes.empty()) primes = {2, 3, 5};
    if (!stable) {
      auto v = check_over_rationals(m, theta, primes, oracle());
      const char* verdict = v.outcome == RationalVerdict::Outcome::semistable_at_all_primes
                                ? "semistable_at_all_primes"
                                : v.outcome == RationalVerdict::Outcome::unstable_proved ? "not_semistable"
                                                                                         : "not_semistable_mod_p";
      r.result["verdict"] = verdict;
      r.result["certainty"] = v.certainty == Certainty::proof ? "proof" : "heuristic";
      r.result["theta_of_M"] = v.theta_of_m;
      r.result["primes_tested"] = v.primes_tested;
      r.result["notices"] = v.notices;
      r.result["budget_used"] = v.budget_used;
      r.lines.push_back(std::string(verdict) + " (" + r.result["certainty"].get<std::string>() + ")");
      for (const auto& n : v.notices) r.lines.push_back("notice: " + n);
      if (!v.semistable()) {
        r.code = negative;
        if (v.witness) {
          json w = witness_json(*v.witness, Field::prime(v.witness_prime));
          w["prime"] = v.witness_prime;
          if (v.lifted_bases) {
            json lifted = json::array();
            for (const auto& b : *v.lifted_bases) lifted.push_back(io::to_json(b, m.field()));
            w["lifted_bases"] = lifted;
          }
          r.result["witness"] = w;
          r.lines.push_back("witness beta = " + show(v.witness->sub.beta.entries()) + ", theta = " +
                            std::to_string(v.witness->theta_value) + " (found mod " +
                            std::to_string(v.witness_prime) + (v.lifted_bases ? ", lifts to Q)" : ", does not lift)"));
        } else {
          const std::string reason = "theta(M) = " + std::to_string(v.theta_of_m) + " is not zero";
          r.result["reason"] = reason;
          r.lines.push_back("reason: " + reason);
        }
      }
      return r;
    }

    // Stability over Q: each reduction is tested; the verdict stays heuristic
    // unless theta(M) != 0.
    r.result["certainty"] = "heuristic";
    r.result["theta_of_M"] = theta_pairing(theta, m.dim());
    json tested = json::array();
    json notices = json::array();
    std::uint64_t used = 0;
    for (auto p : primes) {
      const Field f = Field::prime(p);
      Representation reduced = m;
      try {
        reduced = reduce_mod_p(m, f);
      } catch (const ValidationError&) {
        notices.push_back("prime " + std::to_string(p) + " skipped: it divides a denominator");
        continue;
      }
      tested.push_back(p);
      auto v = is_stable(reduced, theta, oracle());
      used += v.budget_used;
      if (!v.holds) {
        r.code = negative;
        if (v.witness) {
          json w = witness_json(*v.witness, f);
          w["prime"] = p;
          r.result["witness"] = w;
        }
        if (!v.reason.empty()) r.result["reason"] = v.reason;
        if (theta_pairing(theta, m.dim()) != 0) r.result["certainty"] = "proof";
        break;
      }
    }
    if (tested.empty()) notices.push_back("no prime could be tested");
    r.result["primes_tested"] = tested;
    r.result["notices"] = notices;
    r.result["budget_used"] = used;
    if (r.code == ok && tested.empty()) {
      r.code = negative;
      r.result["reason"] = "no prime could be tested";
    }
    r.result["verdict"] = r.code == ok ? "stable_at_all_primes" : "not_stable";
    r.lines.push_back(r.result["verdict"].get<std::string>() + " (" + r.result["certainty"].get<std::string>() + ")");
    for (const auto& n : notices) r.lines.push_back("notice: " + n.get<std::string>());
    if (r.result.contains("witness")) {
      r.lines.push_back("witness beta = " + r.result["witness"]["beta"].dump() + ", theta = " +
                        r.result["witness"]["theta_value"].dump() + " (mod " + r.result["witness"]["prime"].dump() + ")");
    }
    if (r.result.contains("reason")) r.lines.push_back("reason: " + r.result["reason"].get<std::string>());
    return r;
  }

  Report sigma_gen() {
    auto q = quiver();
    const auto theta = weight_arg(o_.theta, *q);
    auto s = make_sigma(*q, theta, o_.z, o_.max_len, o_.seed);
    Report r;
    r.result = {{"sigma", io::to_json(s)}};
    r.lines.push_back(io::to_json(s).dump());
    return r;
  }

  Report sigma_eval() {
    auto q = quiver();
    auto m = rep();
    auto all = sigmas(*q);
    if (all.empty()) throw ValidationError("--sigma is required");
    Report r;
    json values = json::array();
    for (std::size_t i = 0; i < all.size(); ++i) {
      Matrix value = evaluate_sigma(all[i], m);
      json entry = {{"matrix", io::to_json(value, m.field())}, {"rows", value.rows()}, {"cols", value.cols()}};
      std::string line = "sigma " + std::to_string(i + 1) + ": " + show_matrix(value);
      if (value.square()) {
        const Scalar d = determinant(m.field(), value);
        entry["determinant"] = format_scalar(d);
        line += "  det = " + format_scalar(d);
      }
      values.push_back(entry);
      r.lines.push_back(line);
    }
    r.result = {{"evaluations", values}};
    return r;
  }

  Report localize() {
    auto q = quiver();
    auto pres = localization_presentation(*q, sigmas(*q));
    Report r;
    r.result = {{"presentation", io::to_json(pres)}, {"well_typed", pres.well_typed()}};
    std::istringstream text(pres.to_text());
    for (std::string line; std::getline(text, line);) r.lines.push_back(line);
    return r;
  }

  Report check_point() {
    auto q = quiver();
    auto m = rep();
    auto all = sigmas(*q);
    if (all.empty()) throw ValidationError("--sigma is required");
    auto c = check_localized_point(all, m);
    Report r;
    json dets = json::array();
    for (const auto& d : c.determinants) dets.push_back(format_scalar(d));
    r.result = {{"invertible", c.invertible}, {"determinants", dets}, {"relations_verified", c.relations_verified}};
    if (c.invertible) {
      json inverses = json::array();
      for (const auto& n : c.inverses) inverses.push_back(io::to_json(n, m.field()));
      r.result["inverses"] = inverses;
      r.lines.push_back("invertible: true (relations verified: " + std::string(c.relations_verified ? "yes" : "no") + ")");
      for (std::size_t i = 0; i < c.inverses.size(); ++i) {
        r.lines.push_back("N_" + std::to_string(i + 1) + " = " + show_matrix(c.inverses[i]));
      }
    } else {
      r.code = negative;
      const std::string reason = "sigma " + std::to_string(*c.first_singular + 1) + " evaluates to a singular matrix";
      r.result["reason"] = reason;
      r.lines.push_back("invertible: false");
      r.lines.push_back("reason: " + reason);
    }
    return r;
  }

  Report local() {
    auto q = quiver();
    const auto theta = weight_arg(o_.theta, *q);
    if (o_.reps.empty()) throw ValidationError("--rep is required");
    if (!o_.multiplicities.empty() && o_.multiplicities.size() != o_.reps.size()) {
      throw ValidationError("--mult must list one multiplicity per --rep");
    }
    std::vector<LocalSummand> summands;
    for (std::size_t i = 0; i < o_.reps.size(); ++i) {
      summands.push_back({rep(i), o_.multiplicities.empty() ? 1 : o_.multiplicities[i]});
    }
    LocalQuiverOptions options;
    options.assert_stable = o_.assert_stable;
    options.oracle = oracle();
    auto data = local_quiver(summands, theta, options);
    Report r;
    r.result = io::to_json(data);
    r.result["local_model_dimension"] = local_model_dimension(data);
    r.lines.push_back("vertices: " + std::to_string(data.vertex_count()));
    for (std::size_t i = 0; i < data.vertex_count(); ++i) r.lines.push_back("arrows from " + std::to_string(i + 1) + ": " + show(data.arrow_counts[i]));
    r.lines.push_back("beta_y: " + show(data.multiplicities));
    r.lines.push_back("local model dimension: " + std::to_string(local_model_dimension(data)));
    if (!data.stability_verified) r.lines.push_back("stability asserted, not verified");
    return r;
  }

  Report extend() {
    auto q = quiver();
    Quiver e = extended_quiver(*q, o_.n);
    Report r;
    r.result = {{"quiver", io::to_json(e)}, {"tau", io::to_json(tau_morphism(e, q->vertex_count(), o_.n))}};
    r.lines.push_back(io::to_json(e).dump());
    return r;
  }

  Report root() {
    auto q = quiver();
    auto root = root_presentation(*q, sigmas(*q), o_.n, o_.loop_len);
    Report r;
    json loops = json::array();
    for (const auto& w : root.loops) loops.push_back(w);
    r.result = {{"quiver", io::to_json(root.extended)}, {"presentation", io::to_json(root.presentation)}, {"loops", loops}};
    std::istringstream text(root.presentation.to_text());
    for (std::string line; std::getline(text, line);) r.lines.push_back(line);
    r.lines.push_back("loops at v0 (length <= " + std::to_string(o_.loop_len) + "): " + std::to_string(root.loops.size()));
    for (const auto& w : root.loops) {
      std::string line = "  ";
      for (std::size_t i = 0; i < w.size(); ++i) line += (i ? "*" : "") + w[i];
      r.lines.push_back(line);
    }
    return r;
  }

 private:
  const Options& o_;
  QuiverPtr quiver_;
};

json resolved_config(const Options& o, const std::string& command) {
  json c = {{"command", command}, {"format", o.format}, {"jobs", o.jobs}, {"subspace_budget", o.subspace_budget},
            {"seed", o.seed}};
  if (!o.quiver.empty()) c["quiver"] = o.quiver;
  if (!o.alpha.empty()) c["alpha"] = o.alpha;
  if (!o.beta.empty()) c["beta"] = o.beta;
  if (!o.theta.empty()) c["theta"] = o.theta;
  if (!o.reps.empty()) c["reps"] = o.reps;
  if (!o.sigmas.empty()) c["sigmas"] = o.sigmas;
  if (!o.primes.empty()) c["primes"] = o.primes;
  if (!o.multiplicities.empty()) c["multiplicities"] = o.multiplicities;
  if (command == "dimvecs") c["total"] = o.total;
  if (command == "sigma-gen") {
    c["z"] = o.z;
    c["max_len"] = o.max_len;
  }
  if (command == "extend" || command == "root") c["n"] = o.n;
  if (command == "root") c["loop_len"] = o.loop_len;
  if (command == "paths" && o.path_bound) c["max_len"] = *o.path_bound;
  if (command == "local-quiver") c["assert_stable"] = o.assert_stable;
  return c;
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO); }

void emit(const Options& o, const std::string& command, const char* status, int code, const json& payload,
          const std::vector<std::string>& lines) {
  if (o.format == "machine") {
    json record = {{"tool", "qmod"},   {"version", QUIVERMOD_VERSION}, {"command", command},
                   {"status", status}, {"exit", code},                  {"config", resolved_config(o, command)},
                   {"result", payload}};
    std::cout << record.dump() << '\n';
    return;
  }
  const bool color = use_color() && code != ok;
  for (const auto& line : lines) {
    if (color) {
      std::cout << "\033[1;31m" << line << "\033[0m\n";
    } else {
      std::cout << line << '\n';
    }
  }
}

// Lets "--theta -1,1" through: CLI11 would otherwise read "-1,1" as a flag.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    const bool takes_vector = a == "--alpha" || a == "--beta" || a == "--theta" || a == "-a" || a == "-b" || a == "-t";
    if (takes_vector && i + 1 < argc && argv[i + 1][0] == '-' && argv[i + 1][1] >= '0' && argv[i + 1][1] <= '9') {
      const std::string name = a.size() == 2 ? (a == "-a" ? "--alpha" : a == "-b" ? "--beta" : "--theta") : a;
      out.push_back(name + "=" + argv[++i]);
    } else {
      out.push_back(std::move(a));
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Quiver moduli toolkit: stability, generic ext and universal localization", "qmod"};
  app.set_version_flag("--version", QUIVERMOD_VERSION);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_quiver = true) {
    auto* q = sub->add_option("-q,--quiver", o.quiver, "quiver JSON file");
    if (needs_quiver) q->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "machine"}));
  };
  auto vec = [&](CLI::App* sub, const char* flags, std::string& target, const char* help) {
    sub->add_option(flags, target, help);
  };
  auto oracle_flags = [&](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "worker threads for subspace enumeration")->check(CLI::Range(1u, 256u));
    sub->add_option("--budget", o.subspace_budget, "maximum number of subspace tuples")
        ->check(CLI::PositiveNumber);
  };

  auto* paths = app.add_subcommand("paths", "enumerate paths of the quiver");
  common(paths);
  paths->add_option("--max-len", o.path_bound, "longest path length (required for cyclic quivers)");

  auto* euler = app.add_subcommand("euler", "Euler form <alpha, beta>");
  common(euler);
  vec(euler, "-a,--alpha", o.alpha, "dimension vector, e.g. 1,1");
  vec(euler, "-b,--beta", o.beta, "dimension vector");

  auto* dimvecs = app.add_subcommand("dimvecs", "dimension vectors of total n with theta(alpha) = 0");
  common(dimvecs);
  dimvecs->add_option("-n,--total", o.total, "total dimension")->required();
  vec(dimvecs, "-t,--theta", o.theta, "weight, e.g. -1,1");

  auto* ssne = app.add_subcommand("ssne", "is the theta-semistable locus of dimension alpha nonempty");
  auto* stne = app.add_subcommand("stne", "is the theta-stable locus of dimension alpha nonempty");
  auto* dim = app.add_subcommand("dim", "dimension of the moduli space 1 - <alpha, alpha>");
  for (auto* sub : {ssne, stne, dim}) {
    common(sub);
    vec(sub, "-a,--alpha", o.alpha, "dimension vector");
    vec(sub, "-t,--theta", o.theta, "weight");
  }

  auto* check_ss = app.add_subcommand("check-ss", "decide theta-semistability of a representation");
  auto* check_st = app.add_subcommand("check-st", "decide theta-stability of a representation");
  for (auto* sub : {check_ss, check_st}) {
    common(sub);
    sub->add_option("-r,--rep", o.reps, "representation JSON file")->required()->expected(1);
    vec(sub, "-t,--theta", o.theta, "weight");
    sub->add_option("-p,--primes", o.primes, "primes for rational input (default 2 3 5)")->delimiter(',');
    oracle_flags(sub);
  }

  auto* sigma_gen = app.add_subcommand("sigma-gen", "random member of Sigma_z for theta");
  common(sigma_gen);
  vec(sigma_gen, "-t,--theta", o.theta, "weight");
  sigma_gen->add_option("-z", o.z, "multiple of theta")->check(CLI::PositiveNumber);
  sigma_gen->add_option("--max-len", o.max_len, "longest path used in entries");
  sigma_gen->add_option("--seed", o.seed, "random seed");

  auto* sigma_eval = app.add_subcommand("sigma-eval", "evaluate sigma morphisms at a representation");
  auto* check_point = app.add_subcommand("check-point", "is a point in the localized representation space");
  for (auto* sub : {sigma_eval, check_point}) {
    common(sub);
    sub->add_option("-r,--rep", o.reps, "representation JSON file")->required()->expected(1);
    sub->add_option("-s,--sigma", o.sigmas, "sigma JSON file (repeatable)")->required();
  }

  auto* localize = app.add_subcommand("localize", "presentation of the universal localization");
  common(localize);
  localize->add_option("-s,--sigma", o.sigmas, "sigma JSON file (repeatable)");

  auto* local = app.add_subcommand("local-quiver", "local quiver at a semisimple point");
  common(local);
  local->add_option("-r,--rep", o.reps, "stable summand JSON file (repeatable)")->required();
  local->add_option("-e,--mult", o.multiplicities, "multiplicity per summand")->delimiter(',');
  vec(local, "-t,--theta", o.theta, "weight");
  local->add_flag("--assert-stable", o.assert_stable, "skip the stability oracle (result marked unverified)");
  oracle_flags(local);

  auto* extend = app.add_subcommand("extend", "extended quiver with vertex v0 and tau");
  common(extend);
  extend->add_option("-n", o.n, "arrows from v0 to each vertex")->required();

  auto* root = app.add_subcommand("root", "presentation of the n-th root algebra and loops at v0");
  common(root);
  root->add_option("-n", o.n, "arrows from v0 to each vertex")->required();
  root->add_option("-s,--sigma", o.sigmas, "sigma JSON file (repeatable)");
  root->add_option("--loop-len", o.loop_len, "longest loop word");

  std::string command;
  try {
    app.parse(normalize_args(argc, argv));
    command = app.get_subcommands().front()->get_name();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid;
  }

  Runner run(o);
  try {
    Report r;
    if (command == "paths") r = run.paths();
    else if (command == "euler") r = run.euler();
    else if (command == "dimvecs") r = run.dimvecs();
    else if (command == "ssne") r = run.nonempty(false);
    else if (command == "stne") r = run.nonempty(true);
    else if (command == "dim") r = run.dim();
    else if (command == "check-ss") r = run.check(false);
    else if (command == "check-st") r = run.check(true);
    else if (command == "sigma-gen") r = run.sigma_gen();
    else if (command == "sigma-eval") r = run.sigma_eval();
    else if (command == "localize") r = run.localize();
    else if (command == "check-point") r = run.check_point();
    else if (command == "local-quiver") r = run.local();
    else if (command == "extend") r = run.extend();
    else if (command == "root") r = run.root();
    emit(o, command, r.code == ok ? "ok" : "negative", r.code, r.result, r.lines);
    return r.code;
  } catch (const BudgetExceeded& e) {
    json payload = {{"error", e.what()}, {"budget", e.budget_name()}, {"required", e.required()}, {"limit", e.limit()}};
    std::cerr << "qmod: budget exceeded: " << e.what() << '\n';
    emit(o, command, "budget_exceeded", budget, payload,
         {"budget exceeded: " + e.budget_name() + " (required " + std::to_string(e.required()) + ", limit " +
          std::to_string(e.limit()) + ")"});
    return budget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qmod: error: " << e.what() << '\n';
    if (o.format == "machine") emit(o, command, "error", invalid, {{"error", e.what()}}, {});
    return invalid;
  } catch (const json::exception& e) {
    std::cerr << "qmod: error: malformed input: " << e.what() << '\n';
    if (o.format == "machine") emit(o, command, "error", invalid, {{"error", e.what()}}, {});
    return invalid;
  } catch (const std::domain_error& e) {
    std::cerr << "qmod: error: " << e.what() << '\n';
    return invalid;
  }
}
