#include "derange/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "derange/classical.hpp"
#include "derange/errors.hpp"
#include "derange/moments.hpp"
#include "derange/probabilistic.hpp"
#include "derange/verify.hpp"

namespace derange::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Shape { Scalar, RIndexed, Triangle, Polynomial };

struct Family {
  std::string_view name;
  Shape shape;
  bool probabilistic;
};

constexpr Family kFamilies[] = {
    {"D", Shape::Scalar, true},           {"Dpoly", Shape::Polynomial, true},
    {"Dr", Shape::RIndexed, true},        {"d", Shape::Polynomial, false},
    {"dpoly", Shape::Polynomial, true},   {"stirling2Y", Shape::Triangle, true},
    {"bellY", Shape::Polynomial, true},   {"eulerY", Shape::Scalar, true},
    {"classicalD", Shape::Scalar, false}, {"classicalDr", Shape::RIndexed, false},
    {"fubini", Shape::Polynomial, false}, {"stirling2", Shape::Triangle, false},
    {"stirling1", Shape::Triangle, false},
};

const Family* find_family(std::string_view name) {
  for (const auto& f : kFamilies) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

struct TableOptions {
  std::string family;
  std::string dist = "const:1";
  bool dist_given = false;
  unsigned n_max = 10;
  std::optional<unsigned> r;
  std::optional<std::string> x;
  std::string format = "json";
};

struct CheckOptions {
  std::string theorems = "all";
  std::vector<std::string> dists;
  unsigned n_max = 12;
  unsigned r_max = 5;
  std::optional<std::string> x;
  unsigned abel_n_max = 6;
  std::string format = "json";
};

struct McOptions {
  std::string dist;
  unsigned n_max = 6;
  std::vector<std::string> xs;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string format = "json";
};

// One emitted row; `value` is a rendered rational or a coefficient list.
struct Row {
  unsigned n = 0;
  std::optional<unsigned> index;  // k or r
  std::optional<Rational> x;
  std::optional<Rational> value;
  std::optional<Poly> poly;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void emit_table(const Family& fam, const std::vector<Row>& rows, const std::string& format, std::ostream& out) {
  const char* index_name = fam.shape == Shape::RIndexed ? "r" : "k";
  if (format == "csv") {
    const bool coeff_rows = fam.shape == Shape::Polynomial && !rows.empty() && rows.front().poly;
    if (coeff_rows) {
      out << "n,deg,coeff\n";
      for (const auto& row : rows) {
        const auto coeffs = row.poly->coeffs();
        for (std::size_t d = 0; d < coeffs.size(); ++d) out << row.n << ',' << d << ',' << coeffs[d] << '\n';
      }
      return;
    }
    out << "n";
    if (fam.shape == Shape::RIndexed || fam.shape == Shape::Triangle) out << ',' << index_name;
    if (fam.shape == Shape::Polynomial) out << ",x";
    out << ",value\n";
    for (const auto& row : rows) {
      out << row.n;
      if (row.index) out << ',' << *row.index;
      if (row.x) out << ',' << csv_quote(row.x->to_string());
      out << ',' << row.value->to_string() << '\n';
    }
    return;
  }

  out << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    Json obj;
    obj["n"] = row.n;
    if (row.index) obj[index_name] = *row.index;
    if (row.x) obj["x"] = row.x->to_string();
    if (row.poly) {
      Json coeffs = Json::array();
      for (const auto& c : row.poly->coeffs()) coeffs.push_back(c.to_string());
      obj["value"] = Json{{"coeffs", coeffs}};
    } else {
      obj["value"] = row.value->to_string();
    }
    out << (i ? ",\n  " : "\n  ") << obj.dump();
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

int run_table(const TableOptions& opt, std::ostream& out, std::ostream& err) {
  const Family* fam = find_family(opt.family);
  if (fam == nullptr) {
    err << "error: unknown family '" << opt.family << "'\n";
    return kBadConfig;
  }
  const bool needs_r = fam->shape == Shape::RIndexed;
  if (needs_r != opt.r.has_value()) {
    err << "error: --r is " << (needs_r ? "required" : "not accepted") << " for family " << fam->name << '\n';
    return kBadConfig;
  }
  if (opt.x && fam->shape != Shape::Polynomial) {
    err << "error: --x is only accepted for polynomial families\n";
    return kBadConfig;
  }
  if (opt.dist_given && !fam->probabilistic) {
    err << "error: --dist is not accepted for classical family " << fam->name << '\n';
    return kBadConfig;
  }

  std::optional<Rational> x;
  std::optional<prob::ProbabilisticContext> ctx;
  try {
    if (opt.x) x = Rational::parse(*opt.x);
    if (fam->probabilistic) ctx.emplace(moments::make_provider(opt.dist), opt.n_max);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }

  std::vector<Row> rows;
  try {
    const std::string_view name = fam->name;
    auto scalar = [&](unsigned n) -> Rational {
      if (name == "D") {
        ctx->require(n);
        return prob::prob_derangement_number(*ctx, n);
      }
      if (name == "eulerY") {
        ctx->require(n);
        return prob::prob_euler(*ctx, n);
      }
      return classical::derangement(n);
    };
    auto polynomial = [&](unsigned n) -> Poly {
      if (fam->probabilistic) ctx->require(n);
      if (name == "Dpoly") return prob::prob_derangement_poly(*ctx, n);
      if (name == "dpoly") return prob::prob_type2_poly(*ctx, n);
      if (name == "bellY") return prob::prob_bell(*ctx, n);
      if (name == "d") return classical::type2_poly(n);
      return classical::fubini_poly(n);
    };

    switch (fam->shape) {
      case Shape::Scalar:
        for (unsigned n = 0; n <= opt.n_max; ++n) rows.push_back(Row{n, {}, {}, scalar(n), {}});
        break;
      case Shape::RIndexed:
        for (unsigned n = *opt.r; n <= opt.n_max; ++n) {
          Rational v;
          if (fam->probabilistic) {
            ctx->require(n);
            v = prob::prob_r_derangement(*ctx, n, *opt.r);
          } else {
            v = classical::r_derangement(n, *opt.r);
          }
          rows.push_back(Row{n, *opt.r, {}, v, {}});
        }
        break;
      case Shape::Triangle: {
        std::optional<classical::StirlingTables> tables;
        if (!fam->probabilistic) tables.emplace(opt.n_max);
        for (unsigned n = 0; n <= opt.n_max; ++n) {
          if (fam->probabilistic) ctx->require(n);
          for (unsigned k = 0; k <= n; ++k) {
            Rational v;
            if (name == "stirling2Y") {
              v = prob::prob_stirling2(*ctx, n, k);
            } else if (name == "stirling2") {
              v = tables->s2(n, k);
            } else {
              v = tables->s1(n, k);
            }
            rows.push_back(Row{n, k, {}, v, {}});
          }
        }
        break;
      }
      case Shape::Polynomial:
        for (unsigned n = 0; n <= opt.n_max; ++n) {
          const Poly p = polynomial(n);
          if (x) {
            rows.push_back(Row{n, {}, x, p(*x), {}});
          } else {
            rows.push_back(Row{n, {}, {}, {}, p});
          }
        }
        break;
    }
  } catch (const MomentOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kUnavailable;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  emit_table(*fam, rows, opt.format, out);
  return kOk;
}

int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  verify::SweepConfig cfg;
  std::vector<moments::DistributionSpec> suite;
  try {
    cfg.theorems = verify::parse_theorem_list(opt.theorems);
    if (opt.dists.empty()) {
      suite = moments::default_suite();
    } else {
      for (const auto& text : opt.dists) suite.push_back(moments::DistributionSpec::parse(text));
    }
    if (opt.x) cfg.xs = {Rational::parse(*opt.x)};
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  const bool explicit_t2_12 =
      opt.theorems != "all" &&
      std::find(cfg.theorems.begin(), cfg.theorems.end(), verify::TheoremId::T2_12) != cfg.theorems.end();
  if (explicit_t2_12) {
    for (const auto& spec : suite) {
      if (!spec.is_unit_gamma()) {
        err << "error: theorem 2.12 requires --dist gamma:1:1, got " << spec.to_string() << '\n';
        return kBadConfig;
      }
    }
  }
  cfg.n_max = opt.n_max;
  cfg.r_max = opt.r_max;
  cfg.abel_n_max = std::min(opt.abel_n_max, opt.n_max);

  const auto reports = verify::check_all(suite, cfg);
  out << (opt.format == "csv" ? verify::reports_to_csv(reports) : verify::reports_to_json(reports));
  const auto fails = std::count_if(reports.begin(), reports.end(),
                                   [](const auto& r) { return r.status == verify::Status::Fail; });
  if (fails > 0) {
    err << fails << " of " << reports.size() << " checks failed\n";
    return kCheckFailed;
  }
  return kOk;
}

int run_mc(const McOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.samples == 0) {
    err << "error: --samples must be at least 1\n";
    return kBadConfig;
  }
  std::optional<moments::MomentProvider> y;
  std::vector<Rational> xs;
  try {
    y.emplace(moments::make_provider(opt.dist));
    if (opt.xs.empty()) {
      xs = {Rational(0), Rational(1, 2)};
    } else {
      for (const auto& text : opt.xs) xs.push_back(Rational::parse(text));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  if (!y->has_sampler()) {
    err << "error: distribution " << opt.dist << " has no sampler\n";
    return kUnavailable;
  }
  std::vector<verify::McRecord> records;
  try {
    records = verify::monte_carlo_reconcile(*y, opt.n_max, xs, opt.samples, opt.seed);
  } catch (const MomentOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kUnavailable;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  out << (opt.format == "csv" ? verify::mc_to_csv(records) : verify::mc_to_json(records));
  const bool within = std::all_of(records.begin(), records.end(), [](const auto& r) { return std::abs(r.z) <= 5.0; });
  if (!within) {
    err << "error: at least one estimate lies outside 5 standard errors\n";
    return kMonteCarloMismatch;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact classical and probabilistic derangement tables and identity checks", "derange"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"csv", "json"});

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "Emit a table of exact values");
  table_cmd->add_option("--family", table.family, "Sequence family")->required();
  table_cmd->add_option("--dist", table.dist, "Distribution of Y (probabilistic families)");
  table_cmd->add_option("--n-max", table.n_max, "Largest index")->check(CLI::NonNegativeNumber);
  table_cmd->add_option("--r", table.r, "r for r-derangement families");
  table_cmd->add_option("--x", table.x, "Evaluate polynomial families at this rational");
  table_cmd->add_option("--format", table.format)->check(formats);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Verify the theorem identities");
  check_cmd->add_option("--theorems", check.theorems, "Comma list such as 2.1,2.4 or 'all'");
  check_cmd->add_option("--dist", check.dists, "Distribution of Y; repeatable; default is the built-in suite");
  check_cmd->add_option("--n-max", check.n_max, "Largest n");
  check_cmd->add_option("--r", check.r_max, "Largest r");
  check_cmd->add_option("--x", check.x, "Single evaluation point instead of the default grid");
  check_cmd->add_option("--abel-n-max", check.abel_n_max, "Largest n for the Abel-summed check");
  check_cmd->add_option("--format", check.format)->check(formats);

  McOptions mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo reconciliation against exact values");
  mc_cmd->add_option("--dist", mc.dist, "Distribution of Y")->required();
  mc_cmd->add_option("--n-max", mc.n_max, "Largest n");
  mc_cmd->add_option("--x", mc.xs, "Evaluation points; repeatable; default 0 and 1/2");
  mc_cmd->add_option("--samples", mc.samples, "Number of draws");
  mc_cmd->add_option("--seed", mc.seed, "Generator seed");
  mc_cmd->add_option("--format", mc.format)->check(formats);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  table.dist_given = table_cmd->count("--dist") > 0;

  if (table_cmd->parsed()) return run_table(table, out, err);
  if (check_cmd->parsed()) return run_check(check, out, err);
  return run_mc(mc, out, err);
}

}  // namespace derange::cli
