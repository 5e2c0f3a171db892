#include "ndoubling/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "ndoubling/adic.hpp"
#include "ndoubling/exactnum.hpp"
#include "ndoubling/farness.hpp"
#include "ndoubling/measure.hpp"
#include "ndoubling/pairs.hpp"
#include "ndoubling/witness.hpp"

namespace ndoubling::cli {

namespace {

using json = nlohmann::ordered_json;

// Thrown for malformed arguments that CLI11 itself accepts as strings.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational parse_rational_arg(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw UsageError("invalid rational '" + text + "' for " + name + " at position " +
                     std::to_string(e.position()) + ": " + e.what());
  }
}

Natural parse_natural_arg(const std::string& name, const std::string& text) {
  try {
    return Natural::parse(text);
  } catch (const ParseError& e) {
    throw UsageError("invalid natural '" + text + "' for " + name + " at position " +
                     std::to_string(e.position()) + ": " + e.what());
  }
}

Natural parse_base_arg(const std::string& name, const std::string& text) {
  Natural v = parse_natural_arg(name, text);
  if (v < Natural(2)) throw UsageError(name + " must be >= 2, got " + text);
  return v;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// What a command produced, in a renderer-neutral form.
struct Output {
  json inputs = json::object();
  json result = json::object();
  std::optional<std::string> exact;
  std::optional<std::string> approx;
  std::vector<std::string> human;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool failed = false;  // command ran but its check did not hold
};

json rational_json(const Rational& r) {
  return json{{"exact", r.to_string()}, {"approx", r.to_decimal()}};
}

json interval_json(const AdicInterval& I) {
  return json{{"adic", I.to_string()}, {"left", I.left().to_string()},
              {"right", I.right().to_string()}};
}

json classification_json(const PairClassification& c) {
  json j{{"kind", kind_name(c)}};
  if (const auto* d = std::get_if<classification::Dependent>(&c)) {
    j["common_base"] = d->common.base.to_string();
    j["m_exponent"] = d->common.m_exponent;
    j["n_exponent"] = d->common.n_exponent;
  } else if (const auto* f = std::get_if<classification::FarCase>(&c)) {
    j["far_constant"] = f->report.constant->to_string();
    j["witness_level"] = *f->report.witness_level;
  } else {
    const auto& g = std::get<classification::GoodLift>(c);
    j["semi_good_exponent"] = g.semi_good_exponent;
    j["m_power"] = g.m_power;
    j["n_power"] = g.n_power;
    j["lifted_m"] = g.lifted.m().to_string();
    j["lifted_n"] = g.lifted.n().to_string();
  }
  return j;
}

std::vector<std::string> classification_lines(const PairClassification& c, const Natural& n,
                                              const Natural& m) {
  std::vector<std::string> lines{"classification: " + kind_name(c)};
  if (const auto* d = std::get_if<classification::Dependent>(&c)) {
    lines.push_back("common base: " + d->common.base.to_string() + " (m = " +
                    d->common.base.to_string() + "^" + std::to_string(d->common.m_exponent) +
                    ", n = " + d->common.base.to_string() + "^" +
                    std::to_string(d->common.n_exponent) + ")");
  } else if (const auto* f = std::get_if<classification::FarCase>(&c)) {
    lines.push_back("1/" + n.to_string() + " is " + m.to_string() + "-far, constant " +
                    f->report.constant->to_string() + " (attained at level " +
                    std::to_string(*f->report.witness_level) + ")");
  } else {
    const auto& g = std::get<classification::GoodLift>(c);
    lines.push_back("semi-good exponent: " + std::to_string(g.semi_good_exponent));
    lines.push_back("good pair: (" + m.to_string() + "^" + std::to_string(g.m_power) + ", " +
                    n.to_string() + "^" + std::to_string(g.n_power) + ") = (" +
                    g.lifted.m().to_string() + ", " + g.lifted.n().to_string() + ")");
  }
  return lines;
}

json witness_json(const DivergenceWitness& w) {
  json j{{"ell", w.ell},
         {"case", w.tag()},
         {"left", interval_json(w.left_interval)},
         {"right", interval_json(w.right_interval)},
         {"oriented_ratio", rational_json(w.oriented_ratio)},
         {"ratio", rational_json(w.ratio)},
         {"lower_bound", rational_json(w.lower_bound)}};
  if (w.left_enclosure) j["left_enclosure"] = interval_json(*w.left_enclosure);
  if (w.right_enclosure) j["right_enclosure"] = interval_json(*w.right_enclosure);
  return j;
}

const std::vector<std::string> kSweepHeader{"ell",       "case",      "left",
                                            "right",     "ratio_num", "ratio_den",
                                            "ratio_approx", "bound_num", "bound_den"};

std::vector<std::string> sweep_row(const DivergenceWitness& w) {
  return {std::to_string(w.ell),         w.tag(),
          w.left_interval.to_string(),   w.right_interval.to_string(),
          w.ratio.num().get_str(),       w.ratio.den().get_str(),
          w.ratio.to_decimal(),          w.lower_bound.num().get_str(),
          w.lower_bound.den().get_str()};
}

std::string human_sweep_line(const DivergenceWitness& w) {
  std::ostringstream os;
  os << "ell=" << w.ell << "  " << w.tag() << "  left=" << w.left_interval.to_string()
     << "  right=" << w.right_interval.to_string() << "  ratio=" << w.ratio.to_string() << " (~"
     << w.ratio.to_decimal() << ")  bound=" << w.lower_bound.to_string();
  return os.str();
}

void fill_sweep(Output& o, const DivergenceSweep& s) {
  o.result["classification"] = classification_json(s.classification);
  o.result["measure_base"] = s.measure_base.to_string();
  o.result["adic_base"] = s.adic_base.to_string();
  o.result["rows"] = json::array();
  o.csv_header = kSweepHeader;
  o.human.push_back("classification: " + kind_name(s.classification) + ", measure base " +
                    s.measure_base.to_string() + ", adic base " + s.adic_base.to_string());
  for (const auto& w : s.rows) {
    o.result["rows"].push_back(witness_json(w));
    o.csv_rows.push_back(sweep_row(w));
    o.human.push_back(human_sweep_line(w));
  }
  if (!s.rows.empty()) {
    o.exact = s.rows.back().ratio.to_string();
    o.approx = s.rows.back().ratio.to_decimal();
  }
}

void set_scalar(Output& o, const std::string& key, const Rational& value) {
  o.result[key] = value.to_string();
  o.exact = value.to_string();
  o.approx = value.to_decimal();
  o.human = {value.to_string(), "approx: " + value.to_decimal()};
  o.csv_header = {key, "exact", "approx"};
  o.csv_rows = {{key, value.to_string(), value.to_decimal()}};
}

// Weight options shared by measure commands.
struct MeasureArgs {
  std::string n = "3";
  std::string a = "1/2";
  std::string b = "3/2";

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "measure base (2 is promoted to 4)")->capture_default_str();
    cmd->add_option("--a", a, "left weight, 0 < a < 1")->capture_default_str();
    cmd->add_option("--b", b, "right weight, b = 2 - a")->capture_default_str();
  }
  MeasureSpec spec() const {
    return MeasureSpec(parse_base_arg("--n", n), parse_rational_arg("--a", a),
                       parse_rational_arg("--b", b));
  }
  void record(json& inputs) const {
    inputs["n"] = n;
    inputs["a"] = a;
    inputs["b"] = b;
  }
};

void render(const std::string& command, const Output& o, const std::string& format,
            std::ostream& out) {
  if (format == "json") {
    json doc{{"command", command},
             {"inputs", o.inputs},
             {"result", o.result},
             {"exact", o.exact ? json(*o.exact) : json(nullptr)},
             {"approx", o.approx ? json(*o.approx) : json(nullptr)}};
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    std::vector<std::string> header = o.csv_header;
    std::vector<std::vector<std::string>> rows = o.csv_rows;
    if (header.empty()) {
      header = {"field", "value"};
      for (const auto& [key, value] : o.result.items()) {
        rows.push_back({key, value.is_string() ? value.get<std::string>() : value.dump()});
      }
    }
    auto line = [&](const std::vector<std::string>& fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        out << (i ? "," : "") << csv_escape(fields[i]);
      }
      out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  } else {
    for (const auto& l : o.human) out << l << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact n-adic doubling measures, far numbers and base-pair classification"};
  app.name("ndoubling");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human";
  std::string out_path;
  std::string factor_bound;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "write data to FILE instead of stdout");
  app.add_option("--factor-bound", factor_bound,
                 "exclusive bound on trial-division inputs (default 2^63, env "
                 "NDOUBLING_FACTOR_BOUND)");

  std::string command;
  std::function<Output()> action;

  // classify n m
  std::string cl_n, cl_m;
  auto* classify = app.add_subcommand("classify", "classify the base pair (n, m)");
  classify->add_option("n", cl_n, "measure base n")->required();
  classify->add_option("m", cl_m, "target base m")->required();
  classify->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"n", cl_n}, {"m", cl_m}};
      const Natural n = parse_base_arg("n", cl_n);
      const Natural m = parse_base_arg("m", cl_m);
      const PairClassification c = classify_pair(n, m);
      o.result = classification_json(c);
      o.exact = kind_name(c);
      o.human = classification_lines(c, n, m);
      return o;
    };
  });

  // classify-grid
  unsigned long grid_n_max = 20, grid_m_max = 20;
  auto* grid = app.add_subcommand("classify-grid", "classify every pair 2 <= n, m <= max");
  grid->add_option("--n-max", grid_n_max)->capture_default_str();
  grid->add_option("--m-max", grid_m_max)->capture_default_str();
  grid->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"n_max", grid_n_max}, {"m_max", grid_m_max}};
      o.csv_header = {"n", "m", "kind", "common_base", "far_constant", "m_power", "n_power"};
      o.result["rows"] = json::array();
      for (unsigned long n = 2; n <= grid_n_max; ++n) {
        for (unsigned long m = 2; m <= grid_m_max; ++m) {
          const PairClassification c = classify_pair(Natural(n), Natural(m));
          json j = classification_json(c);
          std::vector<std::string> row{std::to_string(n), std::to_string(m), kind_name(c), "", "",
                                       "", ""};
          if (const auto* d = std::get_if<classification::Dependent>(&c)) {
            row[3] = d->common.base.to_string();
          } else if (const auto* f = std::get_if<classification::FarCase>(&c)) {
            row[4] = f->report.constant->to_string();
          } else {
            const auto& g = std::get<classification::GoodLift>(c);
            row[5] = std::to_string(g.m_power);
            row[6] = std::to_string(g.n_power);
          }
          o.human.push_back("n=" + row[0] + " m=" + row[1] + " " + row[2]);
          o.csv_rows.push_back(std::move(row));
          j["n"] = n;
          j["m"] = m;
          o.result["rows"].push_back(std::move(j));
        }
      }
      return o;
    };
  });

  // far delta n / far-constant delta n
  std::string far_delta, far_n;
  auto* far = app.add_subcommand("far", "is delta n-far?");
  far->add_option("delta", far_delta)->required();
  far->add_option("n", far_n)->required();
  far->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"delta", far_delta}, {"n", far_n}};
      const bool f = is_far(parse_rational_arg("delta", far_delta), parse_base_arg("n", far_n));
      o.result["far"] = f;
      o.exact = f ? "true" : "false";
      o.human = {std::string("far: ") + (f ? "true" : "false")};
      return o;
    };
  });

  std::string fc_delta, fc_n;
  auto* far_c = app.add_subcommand("far-constant", "optimal far constant of delta in base n");
  far_c->add_option("delta", fc_delta)->required();
  far_c->add_option("n", fc_n)->required();
  far_c->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"delta", fc_delta}, {"n", fc_n}};
      const FarReport r =
          far_constant(parse_rational_arg("delta", fc_delta), parse_base_arg("n", fc_n));
      o.result["far"] = r.is_far;
      o.human = {std::string("far: ") + (r.is_far ? "true" : "false")};
      if (r.is_far) {
        o.result["constant"] = r.constant->to_string();
        o.result["witness_level"] = *r.witness_level;
        o.exact = r.constant->to_string();
        o.approx = r.constant->to_decimal();
        o.human.push_back("constant: " + r.constant->to_string());
        o.human.push_back("witness level: " + std::to_string(*r.witness_level));
      }
      return o;
    };
  });

  // solvable m n
  std::string sv_m, sv_n;
  auto* solvable = app.add_subcommand("solvable", "is k/m^(l-1) = 1/n^l solvable?");
  solvable->add_option("m", sv_m)->required();
  solvable->add_option("n", sv_n)->required();
  solvable->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"m", sv_m}, {"n", sv_n}};
      const SolvabilityResult r = is_solvable(parse_base_arg("m", sv_m), parse_base_arg("n", sv_n));
      o.result["solvable"] = r.solvable;
      o.exact = r.solvable ? "true" : "false";
      o.human = {std::string("solvable: ") + (r.solvable ? "true" : "false")};
      if (r.solvable) {
        o.result["ell_min"] = *r.ell_min;
        o.result["k"] = r.k_witness->to_string();
        o.human.push_back("ell_min: " + std::to_string(*r.ell_min));
        o.human.push_back("k: " + r.k_witness->to_string());
      }
      return o;
    };
  });

  // lift m n
  std::string lf_m, lf_n;
  auto* lift = app.add_subcommand("lift", "semi-good exponent and good-pair lift of (m, n)");
  lift->add_option("m", lf_m)->required();
  lift->add_option("n", lf_n)->required();
  lift->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"m", lf_m}, {"n", lf_n}};
      const Natural m = parse_base_arg("m", lf_m);
      const Natural n = parse_base_arg("n", lf_n);
      const ExponentPair pair = exponent_pair(m, n);
      const unsigned long e = make_semi_good(pair);
      const LiftExponents l = lift_to_good(pair.powered(e, 1));
      const ExponentPair lifted = pair.powered(e * l.m_power, l.n_power);
      o.result = {{"good", is_good_pair(pair)},
                  {"semi_good", is_semi_good_pair(pair)},
                  {"semi_good_exponent", e},
                  {"m_power", e * l.m_power},
                  {"n_power", l.n_power},
                  {"lifted_m", lifted.m().to_string()},
                  {"lifted_n", lifted.n().to_string()},
                  {"lifted_good", is_good_pair(lifted)}};
      o.exact = "(" + lifted.m().to_string() + ", " + lifted.n().to_string() + ")";
      o.human = {"semi-good exponent: " + std::to_string(e),
                 "lift: (" + m.to_string() + "^" + std::to_string(e * l.m_power) + ", " +
                     n.to_string() + "^" + std::to_string(l.n_power) + ") = " + *o.exact,
                 std::string("good: ") + (is_good_pair(lifted) ? "true" : "false")};
      return o;
    };
  });

  // density / cdf x
  std::string dn_x;
  MeasureArgs dn_args;
  auto* dens = app.add_subcommand("density", "density of the measure at x");
  dens->add_option("x", dn_x)->required();
  dn_args.attach(dens);
  dens->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"x", dn_x}};
      dn_args.record(o.inputs);
      set_scalar(o, "density", density(parse_rational_arg("x", dn_x), dn_args.spec()));
      return o;
    };
  });

  std::string cdf_x;
  MeasureArgs cdf_args;
  auto* cdf_cmd = app.add_subcommand("cdf", "F(x) = mu([0, x))");
  cdf_cmd->add_option("x", cdf_x)->required();
  cdf_args.attach(cdf_cmd);
  cdf_cmd->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"x", cdf_x}};
      cdf_args.record(o.inputs);
      set_scalar(o, "cdf", cdf(parse_rational_arg("x", cdf_x), cdf_args.spec()));
      return o;
    };
  });

  // measure p q
  std::string ms_p, ms_q;
  MeasureArgs ms_args;
  auto* meas = app.add_subcommand("measure", "mu([p, q))");
  meas->add_option("p", ms_p)->required();
  meas->add_option("q", ms_q)->required();
  ms_args.attach(meas);
  meas->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"p", ms_p}, {"q", ms_q}};
      ms_args.record(o.inputs);
      set_scalar(o, "measure",
                 measure_interval(parse_rational_arg("p", ms_p), parse_rational_arg("q", ms_q),
                                  ms_args.spec()));
      return o;
    };
  });

  // audit-doubling
  MeasureArgs ad_args;
  unsigned long ad_depth = 6, ad_range = 3;
  auto* audit = app.add_subcommand("audit-doubling", "exhaustive n-adic child-ratio audit");
  ad_args.attach(audit);
  audit->add_option("--depth", ad_depth, "audit levels 0 .. depth-1")->capture_default_str();
  audit->add_option("--range", ad_range, "audit [0, range)")->capture_default_str();
  audit->callback([&] {
    action = [&] {
      Output o;
      ad_args.record(o.inputs);
      o.inputs["depth"] = ad_depth;
      o.inputs["range"] = ad_range;
      const MeasureSpec spec = ad_args.spec();
      const DoublingAudit r = doubling_audit(spec, ad_depth, ad_range);
      const Rational expected = spec.b() / spec.a();
      o.failed = r.max_ratio != expected;
      o.result["max_ratio"] = r.max_ratio.to_string();
      o.result["expected"] = expected.to_string();
      o.result["attained_at"] = interval_json(*r.attained_at);
      o.result["ratios"] = json::array();
      std::string ratio_list;
      for (const auto& q : r.ratios) {
        o.result["ratios"].push_back(q.to_string());
        ratio_list += (ratio_list.empty() ? "" : ", ") + q.to_string();
      }
      o.result["intervals_checked"] = r.intervals_checked;
      o.exact = r.max_ratio.to_string();
      o.approx = r.max_ratio.to_decimal();
      o.human = {"max ratio: " + r.max_ratio.to_string() + " (b/a = " + expected.to_string() + ")",
                 "attained at: " + r.attained_at->to_string() + " [" +
                     r.attained_at->endpoints_string() + ")",
                 "ratios: {" + ratio_list + "}",
                 "intervals checked: " + std::to_string(r.intervals_checked)};
      return o;
    };
  });

  // audit-nondoubling
  MeasureArgs an_args;
  unsigned long an_ell = 1;
  auto* nd = app.add_subcommand("audit-nondoubling", "interval straddling ell with unbalanced halves");
  an_args.attach(nd);
  nd->add_option("--ell", an_ell)->capture_default_str();
  nd->callback([&] {
    action = [&] {
      Output o;
      an_args.record(o.inputs);
      o.inputs["ell"] = an_ell;
      const MeasureSpec spec = an_args.spec();
      const NonDoublingWitness w = non_doubling_witness(spec, an_ell);
      const Rational closed =
          spec.b().pow(static_cast<long>(an_ell)) / spec.a().pow(static_cast<long>(an_ell + 1));
      o.failed = w.ratio != closed;
      o.result = {{"left", w.left.to_string()},
                  {"right", w.right.to_string()},
                  {"ratio", w.ratio.to_string()},
                  {"closed_form", closed.to_string()}};
      o.exact = w.ratio.to_string();
      o.approx = w.ratio.to_decimal();
      o.human = {"interval: [" + w.left.to_string() + ", " + w.right.to_string() + ")",
                 "ratio: " + w.ratio.to_string() + " (~" + w.ratio.to_decimal() + ")",
                 "b^ell / a^(ell+1): " + closed.to_string()};
      return o;
    };
  });

  // witness n m --ell
  std::string wt_n, wt_m, wt_a = "1/2", wt_b = "3/2";
  unsigned long wt_ell = 2;
  auto* wit = app.add_subcommand("witness", "divergence witness for (n, m) at one scale");
  wit->add_option("n", wt_n)->required();
  wit->add_option("m", wt_m)->required();
  wit->add_option("--ell", wt_ell)->capture_default_str();
  wit->add_option("--a", wt_a)->capture_default_str();
  wit->add_option("--b", wt_b)->capture_default_str();
  wit->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"n", wt_n}, {"m", wt_m}, {"ell", wt_ell}, {"a", wt_a}, {"b", wt_b}};
      const DivergenceSweep s = divergence_sweep(
          parse_base_arg("n", wt_n), parse_base_arg("m", wt_m), std::vector<unsigned long>{wt_ell},
          parse_rational_arg("--a", wt_a), parse_rational_arg("--b", wt_b));
      if (s.rows.empty()) {
        throw DomainError("no witness at ell=" + std::to_string(wt_ell) +
                          " (the non-far path needs ell >= 2)");
      }
      fill_sweep(o, s);
      return o;
    };
  });

  // sweep n m
  std::string sw_n, sw_m, sw_a = "1/2", sw_b = "3/2";
  unsigned long sw_from = 1, sw_to = 10;
  auto* sweep = app.add_subcommand("sweep", "divergence witnesses over a range of scales");
  sweep->add_option("n", sw_n)->required();
  sweep->add_option("m", sw_m)->required();
  sweep->add_option("--ell-from", sw_from)->capture_default_str();
  sweep->add_option("--ell-to", sw_to)->capture_default_str();
  sweep->add_option("--a", sw_a)->capture_default_str();
  sweep->add_option("--b", sw_b)->capture_default_str();
  sweep->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"n", sw_n},         {"m", sw_m}, {"ell_from", sw_from},
                  {"ell_to", sw_to},   {"a", sw_a}, {"b", sw_b}};
      fill_sweep(o, divergence_sweep(parse_base_arg("n", sw_n), parse_base_arg("m", sw_m), sw_from,
                                     sw_to, parse_rational_arg("--a", sw_a),
                                     parse_rational_arg("--b", sw_b)));
      return o;
    };
  });

  // separate --ns --ms --ells
  std::vector<std::string> sp_ns, sp_ms;
  std::vector<unsigned long> sp_ells{2, 4, 8};
  std::string sp_a = "1/2", sp_b = "3/2";
  auto* sep = app.add_subcommand("separate", "find n_i with D_{n_i} outside every D_{m_j}");
  sep->add_option("--ns", sp_ns)->required()->delimiter(',');
  sep->add_option("--ms", sp_ms)->required()->delimiter(',');
  sep->add_option("--ells", sp_ells)->delimiter(',')->capture_default_str();
  sep->add_option("--a", sp_a)->capture_default_str();
  sep->add_option("--b", sp_b)->capture_default_str();
  sep->callback([&] {
    action = [&] {
      Output o;
      o.inputs = {{"ns", sp_ns}, {"ms", sp_ms}, {"ells", sp_ells}, {"a", sp_a}, {"b", sp_b}};
      std::vector<Natural> ns, ms;
      for (const auto& s : sp_ns) ns.push_back(parse_base_arg("--ns", s));
      for (const auto& s : sp_ms) ms.push_back(parse_base_arg("--ms", s));
      const SeparationReport r = separate_families(ns, ms, sp_ells, parse_rational_arg("--a", sp_a),
                                                   parse_rational_arg("--b", sp_b));
      o.result["separable"] = r.separable;
      o.exact = r.separable ? "separable" : "inseparable";
      o.human = {std::string("separable: ") + (r.separable ? "true" : "false")};
      o.csv_header = {"m", "kind", "ell", "case", "ratio_num", "ratio_den", "ratio_approx"};
      if (r.separable) {
        o.result["chosen_i"] = *r.chosen_i;
        o.result["uniform_measure"] = r.uniform_measure;
        o.result["targets"] = json::array();
        o.human.push_back("chosen n: " + ns[*r.chosen_i].to_string() + " (index " +
                          std::to_string(*r.chosen_i) + ")");
        o.human.push_back(std::string("single measure for all targets: ") +
                          (r.uniform_measure ? "true" : "false"));
        for (const auto& t : r.per_target) {
          json tj{{"m", t.m.to_string()},
                  {"classification", classification_json(t.classification)},
                  {"measure_base", t.sample.measure_base.to_string()},
                  {"rows", json::array()}};
          o.human.push_back("m=" + t.m.to_string() + ": " + kind_name(t.classification) +
                            ", measure base " + t.sample.measure_base.to_string());
          for (const auto& w : t.sample.rows) {
            tj["rows"].push_back(witness_json(w));
            o.human.push_back("  " + human_sweep_line(w));
            o.csv_rows.push_back({t.m.to_string(), kind_name(t.classification),
                                  std::to_string(w.ell), w.tag(), w.ratio.num().get_str(),
                                  w.ratio.den().get_str(), w.ratio.to_decimal()});
          }
          o.result["targets"].push_back(std::move(tj));
        }
      } else {
        o.result["dependence"] = json::array();
        o.csv_header = {"n", "m", "common_base"};
        for (const auto& d : r.dependence_witnesses) {
          o.result["dependence"].push_back({{"n", ns[d.n_index].to_string()},
                                            {"m", ms[d.m_index].to_string()},
                                            {"common_base", d.common.base.to_string()}});
          o.human.push_back("n=" + ns[d.n_index].to_string() + " and m=" +
                            ms[d.m_index].to_string() + " are powers of " +
                            d.common.base.to_string());
          o.csv_rows.push_back({ns[d.n_index].to_string(), ms[d.m_index].to_string(),
                                d.common.base.to_string()});
        }
      }
      return o;
    };
  });

  // oracle-check
  MeasureArgs oc_args;
  unsigned long oc_seed = 1, oc_cases = 100, oc_units = 6;
  auto* oracle = app.add_subcommand("oracle-check",
                                    "compare cdf-based interval masses with cell enumeration");
  oc_args.attach(oracle);
  oracle->add_option("--seed", oc_seed)->capture_default_str();
  oracle->add_option("--cases", oc_cases)->capture_default_str();
  oracle->add_option("--units", oc_units, "sample intervals inside [0, units)")
      ->capture_default_str();
  oracle->callback([&] {
    action = [&] {
      Output o;
      oc_args.record(o.inputs);
      o.inputs["seed"] = oc_seed;
      o.inputs["cases"] = oc_cases;
      o.inputs["units"] = oc_units;
      const MeasureSpec spec = oc_args.spec();
      std::mt19937_64 rng(oc_seed);
      std::uniform_int_distribution<long> den_dist(1, 3000);
      unsigned long agree = 0;
      o.csv_header = {"p", "q", "measure", "cells", "agree"};
      for (unsigned long i = 0; i < oc_cases; ++i) {
        auto draw = [&] {
          const long den = den_dist(rng);
          std::uniform_int_distribution<long> num_dist(0, static_cast<long>(oc_units) * den - 1);
          return Rational(Integer(num_dist(rng)), Integer(den));
        };
        Rational p = draw();
        Rational q = draw();
        if (q < p) std::swap(p, q);
        const Rational via_cdf = measure_interval(p, q, spec);
        const Rational via_cells = cell_overlap_measure(p, q, spec);
        const bool ok = via_cdf == via_cells;
        agree += ok ? 1 : 0;
        o.csv_rows.push_back({p.to_string(), q.to_string(), via_cdf.to_string(),
                              via_cells.to_string(), ok ? "true" : "false"});
      }
      o.failed = agree != oc_cases;
      o.result = {{"cases", oc_cases}, {"agree", agree}};
      o.exact = std::to_string(agree) + "/" + std::to_string(oc_cases);
      o.human = {"oracle-check: " + *o.exact + " agree"};
      return o;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsageError;
  }

  for (auto* sub : app.get_subcommands()) command = sub->get_name();

  // --factor-bound is scoped to this call
  struct BoundGuard {
    Natural saved = default_factor_bound();
    ~BoundGuard() { set_default_factor_bound(saved); }
  } guard;
  try {
    if (!factor_bound.empty()) {
      set_default_factor_bound(parse_natural_arg("--factor-bound", factor_bound));
    }
    const Output o = action();
    if (out_path.empty()) {
      render(command, o, format, out);
    } else {
      std::ofstream file(out_path);
      if (!file) throw UsageError("cannot open output file " + out_path);
      render(command, o, format, file);
    }
    if (o.failed) {
      err << command << ": check failed\n";
      return kDomainError;
    }
    return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace ndoubling::cli
