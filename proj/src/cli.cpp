#include "langdual/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "langdual/acceptance.hpp"
#include "langdual/bridges.hpp"
#include "langdual/mckay.hpp"
#include "langdual/repchar.hpp"
#include "langdual/rootsys.hpp"

namespace langdual::cli {

namespace {

using coxeter::AffineElement;
using coxeter::AffineWeylGroup;
using lattice::BigInt;
using rootsys::Isogeny;
using rootsys::RootSystem;
using rootsys::Vec;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// "1,0" -> {1, 0}.
Vec parse_vec(const std::string& text, const std::string& what) {
  Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(Errc::BadInput, what + ": cannot parse '" + item + "' as an integer");
    }
  }
  if (out.empty()) fail(Errc::BadInput, what + " is empty");
  return out;
}

Isogeny parse_isogeny(const std::string& s) {
  if (s == "sc") return Isogeny::SimplyConnected;
  if (s == "ad") return Isogeny::Adjoint;
  fail(Errc::BadInput, "isogeny must be sc or ad, got '" + s + "'");
}

// "A2~" -> "A2" (the tilde marks the affine group and is optional).
std::string finite_part(const std::string& type) {
  std::string t = trim(type);
  if (!t.empty() && t.back() == '~') t.pop_back();
  if (t.empty()) fail(Errc::UnknownType, "empty type label");
  return t;
}

// Dynkin labels -> X coordinates, with a rank check.
Vec weight_from_labels(const RootSystem& rs, const Vec& labels, const std::string& what) {
  if (labels.size() != rs.nsimple())
    fail(Errc::BadInput, what + " needs " + std::to_string(rs.nsimple()) + " Dynkin labels");
  return rootsys::weight_from_dynkin(rs, labels);
}

// Irreducible rank-2 labels distinguish C2 from B2 by orientation.
std::string display_type(const std::vector<std::vector<std::int64_t>>& cartan) {
  if (cartan.size() == 2 && cartan == rootsys::standard_cartan('C', 2)) return "C2";
  return rootsys::identify_type(cartan);
}

nlohmann::json big(const BigInt& v) { return lattice::to_json(v); }

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::BadInput, "invalid JSON in " + where + ": " + e.what());
  }
}

// Pass/fail bookkeeping shared by every command body.
struct Stage {
  bool input = true;  // still reading and checking user input
};

using Body = std::function<void(RunReport&, Stage&)>;

RunReport execute(const std::string& command, nlohmann::json inputs, const Body& body) {
  RunReport rep;
  rep.command = command;
  rep.inputs = std::move(inputs);
  Stage stage;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(rep, stage);
    rep.exit = rep.pass ? Exit::Pass : Exit::VerificationFailed;
  } catch (const Error& e) {
    rep.pass = false;
    rep.error = e.code();
    rep.error_message = e.what();
    rep.exit = exit_for(e.code(), stage.input);
  } catch (const nlohmann::json::exception& e) {
    rep.pass = false;
    rep.error = Errc::BadInput;
    rep.error_message = std::string("BadInput: ") + e.what();
    rep.exit = Exit::Usage;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void require_budget(std::size_t needed, const Config& cfg, const std::string& what) {
  if (needed > cfg.max_length)
    fail(Errc::BallTooLarge, what + " needs length " + std::to_string(needed) + " > max_length " +
                                 std::to_string(cfg.max_length));
}

// ---------------------------------------------------------------------------
// Commands

struct RootsysArgs {
  std::string type, input, isogeny = "sc";
  bool dual = false, roots = false;
};

RunReport cmd_rootsys(const RootsysArgs& a, const Config&) {
  nlohmann::json inputs{{"isogeny", a.isogeny}, {"dual", a.dual}};
  if (!a.type.empty()) inputs["type"] = a.type;
  if (!a.input.empty()) inputs["input"] = a.input;
  return execute("rootsys", inputs, [&](RunReport& rep, Stage& stage) {
    if (a.type.empty() == a.input.empty()) fail(Errc::BadInput, "give exactly one of --type and --input");
    RootSystem rs = a.type.empty() ? rootsys::from_json(parse_json_text(read_text(a.input), a.input))
                                   : rootsys::standard_types(a.type, parse_isogeny(a.isogeny));
    auto cert = rootsys::validate(rs);
    stage.input = false;
    if (a.dual) {
      rs = rootsys::dual(rs);
      cert = rootsys::validate(rs);
    }
    const auto cartan = rs.cartan();
    const auto flags = rootsys::classify_flags(rs);
    const auto rd = rootsys::enumerate_roots(rs);
    const std::string type = display_type(cartan);
    rep.details = {{"type", type},
                   {"rank", rs.rank},
                   {"cartan", cartan},
                   {"root_system", rootsys::to_json(rs)},
                   {"certificate", cert.c},
                   {"flags",
                    {{"simply_connected", flags.simply_connected},
                     {"adjoint", flags.adjoint},
                     {"semisimple", flags.semisimple},
                     {"irreducible", flags.irreducible}}},
                   {"positive_roots", rd.npos}};
    if (a.roots) rep.details["roots"] = rootsys::to_json(rd);
    rep.pass = true;
    rep.summary = {"type " + type + ", rank " + std::to_string(rs.rank) + ", " + std::to_string(rd.npos) +
                       " positive roots",
                   "cartan " + nlohmann::json(cartan).dump()};
  });
}

struct McKayArgs {
  std::string family;
  std::optional<std::size_t> n;
  std::uint64_t seed = 1;
};

RunReport cmd_mckay(const McKayArgs& a, const Config&) {
  nlohmann::json inputs{{"family", a.family}, {"seed", a.seed}};
  if (a.n) inputs["n"] = *a.n;
  return execute("mckay", inputs, [&](RunReport& rep, Stage& stage) {
    if (a.family.size() != 1 || a.family[0] < 'a' || a.family[0] > 'i')
      fail(Errc::BadParameter, "family must be one of a-i");
    const char f = a.family[0];
    const bool has_n = f == 'a' || f == 'b' || f == 'f' || f == 'g';
    const std::size_t n = a.n ? *a.n : has_n ? 2 : 0;
    const auto expected = mckay::expected_type(f, n);  // BadParameter outside the family's range
    stage.input = false;
    auto res = mckay::run_mckay(f, n, a.seed);
    const auto flags = rootsys::classify_flags(res.root_system);
    const bool type_ok =
        rootsys::cartan_isomorphic(res.cartan, rootsys::standard_types(expected, Isogeny::SimplyConnected).cartan());
    rep.details = mckay::to_json(res);
    rep.details["type_matches"] = type_ok;
    rep.details["rank"] = res.root_system.rank;
    rep.pass = type_ok && flags.simply_connected && flags.irreducible && res.form.ok();
    rep.details["pass"] = rep.pass;
    rep.summary = {"Gamma " + res.pair.gamma.name + " (" + std::to_string(res.pair.gamma.order()) + "), Gamma' " +
                       res.pair.gamma_prime.name + " (" + std::to_string(res.pair.gamma_prime.order()) + ")",
                   "type " + res.type + " (expected " + expected + "), rank " +
                       std::to_string(res.root_system.rank),
                   "cartan " + nlohmann::json(res.cartan).dump(),
                   std::string("form ") + (res.form.ok() ? "positive semidefinite, radical spanned by " : "FAILED ") +
                       nlohmann::json(res.form.null).dump()};
  });
}

struct KLArgs {
  std::string type, z, isogeny = "sc";
};

RunReport cmd_kl(const KLArgs& a, const Config& cfg, const std::optional<std::string>& journal) {
  return execute("kl", {{"type", a.type}, {"z", a.z}, {"isogeny", a.isogeny}}, [&](RunReport& rep, Stage& stage) {
    AffineWeylGroup group(rootsys::standard_types(finite_part(a.type), parse_isogeny(a.isogeny)));
    const AffineElement z = group.parse_word(a.z);
    require_budget(group.length(z), cfg, "c_z");
    stage.input = false;
    hecke::HeckeAlgebra algebra(group);
    hecke::KLTable table(algebra, cfg.max_length, journal);
    const auto& c = table.c(z);
    std::vector<AffineElement> support;
    for (const auto& [w, p] : c.terms()) support.push_back(w);
    std::sort(support.begin(), support.end(), [&](const auto& x, const auto& y) {
      const auto lx = group.length(x), ly = group.length(y);
      return lx != ly ? lx < ly : x < y;
    });
    nlohmann::json entries = nlohmann::json::array();
    rep.summary.push_back("c_z for z = " + group.word_string(z) + " (length " + std::to_string(group.length(z)) + ")");
    for (const auto& w : support) {
      const auto p = table.p(w, z);
      entries.push_back({{"w", group.word_string(w)},
                         {"length", group.length(w)},
                         {"p", p.to_string()},
                         {"p_terms", to_json(p)},
                         {"mu", table.mu(w, z)}});
      rep.summary.push_back("  p[" + group.word_string(w) + "] = " + p.to_string());
    }
    const bool bar = table.verify_bar_invariant(z);
    const bool shape = table.verify_shape(z);
    rep.details = {{"z", group.word_string(z)},
                   {"element", group.to_json(z)},
                   {"length", group.length(z)},
                   {"entries", entries},
                   {"bar_invariant", bar},
                   {"shape_ok", shape}};
    rep.pass = bar && shape;
    rep.cache = table.stats();
  });
}

struct BridgeArgs {
  std::string type, lambda, mu, isogeny = "sc";
  std::size_t slack = 2;
};

RunReport cmd_bridge20(const BridgeArgs& a, const Config& cfg, const std::optional<std::string>& journal) {
  nlohmann::json inputs{{"type", a.type}, {"lambda", a.lambda}, {"mu", a.mu}, {"isogeny", a.isogeny}, {"slack", a.slack}};
  return execute("bridge20", inputs, [&](RunReport& rep, Stage& stage) {
    const RootSystem rs = rootsys::standard_types(a.type, parse_isogeny(a.isogeny));
    if (!rootsys::classify_flags(rs).simply_connected)
      fail(Errc::NotSimplyConnected, "bridge20 needs a simply connected root system");
    const Vec lambda = weight_from_labels(rs, parse_vec(a.lambda, "--lambda"), "--lambda");
    const Vec mu = weight_from_labels(rs, parse_vec(a.mu, "--mu"), "--mu");
    repchar::dominant_weight(rs, lambda);
    repchar::dominant_weight(rs, mu);
    std::size_t cap;
    {
      AffineWeylGroup probe(rootsys::dual(rs));
      cap = bridges::spherical_budget(probe, lambda, mu, a.slack);
    }
    require_budget(cap, cfg, "the spherical product");
    stage.input = false;
    bridges::BridgeContext ctx(rs, cap, journal);
    const auto r = bridges::verify_bridge_x(ctx, lambda, mu);
    rep.details = bridges::to_json(r, ctx.dual_group());
    nlohmann::json decomposition = nlohmann::json::array();
    std::string line = vec_text(rs.dynkin(lambda)) + " x " + vec_text(rs.dynkin(mu)) + " =";
    for (const auto& e : r.spherical.entries) {
      nlohmann::json mult = e.constant ? nlohmann::json(e.mtilde.coeff(0)) : nlohmann::json(e.mtilde.to_string());
      decomposition.push_back({{"mu", rs.dynkin(e.lambda2)}, {"mult", mult}});
      line += " " + mult.dump() + "*" + vec_text(rs.dynkin(e.lambda2));
    }
    rep.details["lambda_labels"] = rs.dynkin(lambda);
    rep.details["mu_labels"] = rs.dynkin(mu);
    rep.details["decomposition"] = decomposition;
    rep.pass = r.pass();
    rep.cache = ctx.table().stats();
    rep.summary = {line + " (Dynkin labels)",
                   std::string("tensor multiplicities ") + (r.tensor_equal ? "equal" : "DIFFER") + ", constants " +
                       (r.constancy ? "yes" : "NO") + ", weight identity " + (r.weights_equal ? "holds" : "FAILS"),
                   "P = " + r.spherical.P.to_string() + ", ball " + std::to_string(r.spherical.ball_radius)};
  });
}

struct CellsArgs {
  std::string type;
  std::size_t ball = 0;
};

RunReport cmd_cells(const CellsArgs& a, const Config& cfg, const std::optional<std::string>& journal) {
  return execute("cells", {{"type", a.type}, {"ball", a.ball}, {"window", cfg.window}}, [&](RunReport& rep, Stage& stage) {
    const std::string t = finite_part(a.type);
    std::size_t rank = 0;
    if (t.size() < 2 || t[0] != 'A' || t.find('x') != std::string::npos)
      fail(Errc::BadParameter, "the cell-count oracle covers affine type A only");
    try {
      rank = std::stoul(t.substr(1));
    } catch (const std::exception&) {
      fail(Errc::UnknownType, "cannot read the rank in '" + a.type + "'");
    }
    if (rank < 1) fail(Errc::UnknownType, "rank must be >= 1");
    require_budget(a.ball + cfg.window, cfg, "cells with window");
    stage.input = false;
    const auto r = bridges::cell_count_check(rank + 1, a.ball, cfg.threads, journal, cfg.window, cfg.ball_cap);
    rep.details = bridges::to_json(r);
    rep.details["type"] = t + "~";
    rep.pass = r.verdict == "pass";
    rep.cache = r.cache;
    std::string sizes;
    for (auto s : r.sizes) sizes += (sizes.empty() ? "" : ", ") + std::to_string(s);
    std::size_t certified = std::count(r.certified.begin(), r.certified.end(), true);
    rep.summary = {std::to_string(r.cells) + " cells in ball " + std::to_string(a.ball) + " (sizes " + sizes + "), " +
                       std::to_string(certified) + " certified",
                   "partition count p(" + std::to_string(r.n) + ") = " + std::to_string(r.partitions) + ", verdict " +
                       r.verdict};
  });
}

struct TransportArgs {
  std::string type, w = "1", theta, isogeny = "sc";
  long q = 0;
};

RunReport cmd_transport(const TransportArgs& a, const Config&) {
  nlohmann::json inputs{{"type", a.type}, {"w", a.w}, {"q", a.q}, {"theta", a.theta}, {"isogeny", a.isogeny}};
  return execute("transport", inputs, [&](RunReport& rep, Stage& stage) {
    const RootSystem rs = rootsys::standard_types(a.type, parse_isogeny(a.isogeny));
    const auto rd = rootsys::enumerate_roots(rs);
    coxeter::WeylGroup weyl(rs, rd);
    const auto w = bridges::parse_weyl_word(weyl, a.w);
    lattice::Character theta;
    if (!trim(a.theta).empty()) {
      std::stringstream ss(a.theta);
      std::string item;
      while (std::getline(ss, item, ',')) theta.push_back(lattice::QmodZ::parse(trim(item)));
    }
    auto setup = bridges::transport_setup(rs, weyl, w, a.q);
    setup.pairing->check_character(theta);
    stage.input = false;
    const auto point = bridges::transport_character(rs, weyl, w, a.q, theta);
    const auto& yg = setup.pairing->y_group();
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& d : yg.invariant_factors()) factors.push_back(big(d));
    nlohmann::json theta_json = nlohmann::json::array();
    for (const auto& t : theta) theta_json.push_back(t.to_string());
    rep.details = bridges::to_json(point);
    rep.details["theta"] = theta_json;
    rep.details["y_group"] = {{"invariant_factors", factors}, {"order", big(yg.order())}};
    rep.details["character_order"] = big(setup.pairing->character_order(theta));
    rep.pass = true;
    std::string coords;
    for (const auto& c : point.coords) coords += (coords.empty() ? "" : ", ") + c.to_string();
    rep.summary = {"Y/AY of order " + yg.order().get_str() + ", character order " +
                       setup.pairing->character_order(theta).get_str(),
                   "dual torus point (" + coords + ") of order " + point.order.get_str()};
  });
}

struct RepArgs {
  std::string type, lambda, mu;
};

nlohmann::json decomposition_json(const RootSystem& rs, const repchar::WeightMap& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [mu, mult] : m) out.push_back({{"mu", rs.dynkin(mu)}, {"mult", big(mult)}});
  return out;
}

RunReport cmd_tensor(const RepArgs& a, const Config&) {
  return execute("tensor", {{"type", a.type}, {"lambda", a.lambda}, {"mu", a.mu}}, [&](RunReport& rep, Stage& stage) {
    const RootSystem rs = rootsys::standard_types(a.type, Isogeny::SimplyConnected);
    const Vec l = weight_from_labels(rs, parse_vec(a.lambda, "--lambda"), "--lambda");
    const Vec m = weight_from_labels(rs, parse_vec(a.mu, "--mu"), "--mu");
    repchar::dominant_weight(rs, l);
    repchar::dominant_weight(rs, m);
    stage.input = false;
    const auto bk = repchar::tensor_decomposition(rs, l, m);
    const auto prod = repchar::tensor_decomposition_by_product(rs, l, m);
    rep.details = {{"lambda", rs.dynkin(l)}, {"lambda_prime", rs.dynkin(m)}, {"decomposition", decomposition_json(rs, bk)},
                   {"cross_check", bk == prod}};
    rep.pass = bk == prod;
    std::string line;
    for (const auto& [mu, mult] : bk) line += " " + mult.get_str() + "*" + vec_text(rs.dynkin(mu));
    rep.summary = {vec_text(rs.dynkin(l)) + " x " + vec_text(rs.dynkin(m)) + " =" + line};
  });
}

RunReport cmd_weights(const RepArgs& a, const Config&) {
  return execute("weights", {{"type", a.type}, {"lambda", a.lambda}}, [&](RunReport& rep, Stage& stage) {
    const RootSystem rs = rootsys::standard_types(a.type, Isogeny::SimplyConnected);
    const Vec l = weight_from_labels(rs, parse_vec(a.lambda, "--lambda"), "--lambda");
    repchar::dominant_weight(rs, l);
    stage.input = false;
    const auto ch = repchar::full_character(rs, l);
    const BigInt dim = repchar::weyl_dimension(rs, l);
    const bool ok = ch.dimension() == dim && repchar::is_w_invariant(rs, ch.weights);
    rep.details = {{"lambda", rs.dynkin(l)}, {"decomposition", decomposition_json(rs, ch.dominant)},
                   {"dimension", big(dim)}, {"weights", ch.weights.size()}};
    rep.pass = ok;
    std::string line;
    for (const auto& [mu, mult] : ch.dominant) line += " " + vec_text(rs.dynkin(mu)) + ":" + mult.get_str();
    rep.summary = {"dominant weights" + line, "dimension " + dim.get_str()};
  });
}

struct AcceptArgs {
  std::string suite;
  std::uint64_t seed = 20;
};

RunReport cmd_accept(const AcceptArgs& a, const Config& cfg, const std::optional<std::string>& journal) {
  return execute("accept", {{"suite", a.suite}, {"seed", a.seed}}, [&](RunReport& rep, Stage& stage) {
    if (a.suite != "primary") fail(Errc::BadParameter, "unknown suite '" + a.suite + "' (available: primary)");
    stage.input = false;
    acceptance::Options opt;
    opt.threads = cfg.threads;
    opt.window = cfg.window;
    opt.seed = a.seed;
    opt.journal = journal;
    const auto results = acceptance::run_primary(opt);
    nlohmann::json criteria = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
      criteria.push_back(acceptance::to_json(r));
      rep.summary.push_back(acceptance::format_line(r));
      all = all && r.pass;
    }
    rep.details = {{"suite", a.suite}, {"criteria", criteria}};
    rep.pass = all && results.size() == 7;
  });
}

bool wants_json(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--json" || args[i] == "--format=json") return true;
    if (args[i] == "--format" && i + 1 < args.size() && args[i + 1] == "json") return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------

void Config::validate() const {
  if (max_length == 0) fail(Errc::BadParameter, "max_length must be positive");
  if (ball_cap == 0) fail(Errc::BadParameter, "ball_cap must be positive");
  if (window < 1) fail(Errc::BadParameter, "window must be >= 1");
  if (threads == 0) fail(Errc::BadParameter, "threads must be positive");
}

Config config_from_json(const nlohmann::json& j, Config base) {
  if (!j.is_object()) fail(Errc::BadInput, "config must be a JSON object");
  auto count = [&](const char* key) -> std::size_t {
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(Errc::BadInput, std::string("config key ") + key + " must be a non-negative integer");
    return v.get<std::size_t>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "max_length") base.max_length = count("max_length");
    else if (key == "ball_cap") base.ball_cap = count("ball_cap");
    else if (key == "window") base.window = count("window");
    else if (key == "threads") base.threads = count("threads");
    else if (key == "cache") {
      if (value.is_null()) base.cache.reset();
      else if (value.is_string()) base.cache = value.get<std::string>();
      else fail(Errc::BadInput, "config key cache must be a string or null");
    } else if (key == "format") {
      if (value == "json") base.format = Format::Json;
      else if (value == "text") base.format = Format::Text;
      else fail(Errc::BadInput, "config key format must be json or text");
    } else {
      fail(Errc::BadInput, "unknown config key '" + key + "'");
    }
  }
  base.validate();
  return base;
}

Config load_config(const std::string& path) {
  return config_from_json(parse_json_text(read_text(path), path));
}

Exit exit_for(Errc code, bool input_stage) {
  switch (code) {
    case Errc::BallTooLarge:
    case Errc::SupportEscapesBall:
    case Errc::Overflow:
      return Exit::Budget;
    case Errc::BadParameter:
    case Errc::BadInput:
    case Errc::UnknownType:
    case Errc::NotDominant:
    case Errc::NotSimplyConnected:
    case Errc::InvalidCharacter:
    case Errc::CharacteristicDividesOrder:
      return Exit::Usage;
    default:
      return input_stage ? Exit::Usage : Exit::VerificationFailed;
  }
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j{{"version", kReportVersion},
                   {"command", r.command},
                   {"inputs", r.inputs},
                   {"pass", r.pass},
                   {"exit_code", static_cast<int>(r.exit)},
                   {"wall_seconds", r.wall_seconds},
                   {"cache", {{"hits", r.cache.hits}, {"misses", r.cache.misses}, {"rejected", r.cache.rejected}}},
                   {"details", r.details}};
  if (r.error) j["error"] = {{"code", std::string(errc_name(*r.error))}, {"message", r.error_message}};
  return j;
}

std::string to_text(const RunReport& r) {
  std::ostringstream s;
  if (r.error) {
    s << r.command << ": error " << r.error_message << '\n';
    return s.str();
  }
  for (const auto& line : r.summary) s << line << '\n';
  s.setf(std::ios::fixed);
  s.precision(3);
  s << r.command << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.wall_seconds << " s";
  if (r.cache.hits + r.cache.misses > 0) s << ", KL cache " << r.cache.hits << " hits / " << r.cache.misses << " misses";
  s << ")\n";
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks between the Hecke-algebra and representation sides of Langlands duality", "langdual"};
  app.require_subcommand(1);

  std::string config_path, format_name, cache_path;
  bool json_flag = false;
  std::size_t threads = 0, max_length = 0, ball_cap = 0, window = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON config file (flags override it)");
  auto* o_json = app.add_flag("--json", json_flag, "Emit the run report as JSON");
  auto* o_format = app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "text"}));
  auto* o_threads = app.add_option("--threads", threads, "Worker threads");
  auto* o_max_length = app.add_option("--max-length", max_length, "Longest element a KL table may hold");
  auto* o_ball_cap = app.add_option("--ball-cap", ball_cap, "Most elements a ball may have");
  auto* o_window = app.add_option("--window", window, "Certification window for cells");
  auto* o_cache = app.add_option("--cache", cache_path, "KL cache file (JSON lines); LANGDUAL_KL_CACHE also works");
  (void)o_json;

  RootsysArgs ra;
  auto* sub_rootsys = app.add_subcommand("rootsys", "Build, validate and dualize a root system");
  sub_rootsys->add_option("--type", ra.type, "Type label such as G2 or A1xA1");
  sub_rootsys->add_option("--input", ra.input, "JSON file ('-' for stdin) with {cartan, isogeny, gram} or {type, isogeny}");
  sub_rootsys->add_option("--isogeny", ra.isogeny, "sc or ad (with --type)");
  sub_rootsys->add_flag("--dual", ra.dual, "Report the Langlands dual");
  sub_rootsys->add_flag("--roots", ra.roots, "List all roots");

  McKayArgs ma;
  std::size_t mckay_n = 0;
  auto* sub_mckay = app.add_subcommand("mckay", "Root system from a pair of finite subgroups of SL2(C)");
  sub_mckay->add_option("--family", ma.family, "Family a-i")->required();
  auto* o_n = sub_mckay->add_option("--n", mckay_n, "Family parameter (default 2 where needed)");
  sub_mckay->add_option("--seed", ma.seed, "Seed for the form sampling");

  KLArgs ka;
  auto* sub_kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomials p_{w,z} for one z");
  sub_kl->add_option("--type", ka.type, "Affine type such as A1~")->required();
  sub_kl->add_option("--z", ka.z, "Word in s0, s1, ... (o<k> for length-zero elements)")->required();
  sub_kl->add_option("--isogeny", ka.isogeny, "sc or ad");

  BridgeArgs ba;
  auto* sub_bridge = app.add_subcommand("bridge20", "Spherical structure constants against tensor multiplicities");
  sub_bridge->add_option("--type", ba.type, "Finite type of the primal root system")->required();
  sub_bridge->add_option("--lambda", ba.lambda, "Dynkin labels, comma separated")->required();
  sub_bridge->add_option("--mu", ba.mu, "Dynkin labels, comma separated")->required();
  sub_bridge->add_option("--slack", ba.slack, "Extra length budget");
  sub_bridge->add_option("--isogeny", ba.isogeny, "Must be sc");

  CellsArgs ca;
  auto* sub_cells = app.add_subcommand("cells", "Two-sided cells in a ball against the partition count");
  sub_cells->add_option("--type", ca.type, "Affine type A<n>~")->required();
  sub_cells->add_option("--ball", ca.ball, "Ball radius")->required();

  TransportArgs ta;
  auto* sub_transport = app.add_subcommand("transport", "Transport a torus character to the dual torus");
  sub_transport->add_option("--type", ta.type, "Finite type")->required();
  sub_transport->add_option("--w", ta.w, "Weyl element as a word (s, s1 s2, or 1)");
  sub_transport->add_option("--q", ta.q, "Prime power q")->required();
  sub_transport->add_option("--theta", ta.theta, "Character values on the generators of Y/AY, e.g. 1/3");
  sub_transport->add_option("--isogeny", ta.isogeny, "sc or ad");

  RepArgs tens, wts;
  auto* sub_tensor = app.add_subcommand("tensor", "Tensor product decomposition");
  sub_tensor->add_option("--type", tens.type, "Finite type")->required();
  sub_tensor->add_option("--lambda", tens.lambda, "Dynkin labels")->required();
  sub_tensor->add_option("--mu", tens.mu, "Dynkin labels")->required();
  auto* sub_weights = app.add_subcommand("weights", "Dominant weight multiplicities of a Weyl module");
  sub_weights->add_option("--type", wts.type, "Finite type")->required();
  sub_weights->add_option("--lambda", wts.lambda, "Dynkin labels")->required();

  AcceptArgs aa;
  auto* sub_accept = app.add_subcommand("accept", "Run an acceptance suite");
  sub_accept->add_option("--suite", aa.suite, "Suite name (primary)")->required();
  sub_accept->add_option("--seed", aa.seed, "Seed for randomized criteria");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  const bool json_requested = wants_json(args);
  auto usage_error = [&](const std::string& command, const std::string& message) {
    err << "langdual: " << message << '\n';
    if (json_requested) {
      RunReport rep;
      rep.command = command;
      rep.error = Errc::BadInput;
      rep.error_message = message;
      rep.exit = Exit::Usage;
      out << to_json(rep).dump(2) << '\n';
    }
    return static_cast<int>(Exit::Usage);
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string command;
    for (auto* sub : app.get_subcommands({}))
      if (sub->parsed()) command = sub->get_name();
    return usage_error(command, e.what());
  }

  CLI::App* chosen = app.get_subcommands().front();
  Config cfg;
  try {
    if (o_config->count()) cfg = load_config(config_path);
    if (json_flag) cfg.format = Format::Json;
    if (o_format->count()) cfg.format = format_name == "json" ? Format::Json : Format::Text;
    if (o_threads->count()) cfg.threads = threads;
    if (o_max_length->count()) cfg.max_length = max_length;
    if (o_ball_cap->count()) cfg.ball_cap = ball_cap;
    if (o_window->count()) cfg.window = window;
    if (o_cache->count()) cfg.cache = cache_path;
    cfg.validate();
  } catch (const Error& e) {
    return usage_error(chosen->get_name(), e.what());
  }
  if (o_n->count()) ma.n = mckay_n;
  // Precedence for the cache path: --cache, then LANGDUAL_KL_CACHE, then the config file.
  const std::optional<std::string> journal = o_cache->count() ? cfg.cache : hecke::journal_path(cfg.cache);

  RunReport rep;
  if (chosen == sub_rootsys) rep = cmd_rootsys(ra, cfg);
  else if (chosen == sub_mckay) rep = cmd_mckay(ma, cfg);
  else if (chosen == sub_kl) rep = cmd_kl(ka, cfg, journal);
  else if (chosen == sub_bridge) rep = cmd_bridge20(ba, cfg, journal);
  else if (chosen == sub_cells) rep = cmd_cells(ca, cfg, journal);
  else if (chosen == sub_transport) rep = cmd_transport(ta, cfg);
  else if (chosen == sub_tensor) rep = cmd_tensor(tens, cfg);
  else if (chosen == sub_weights) rep = cmd_weights(wts, cfg);
  else rep = cmd_accept(aa, cfg, journal);

  if (rep.error) err << "langdual " << rep.command << ": " << rep.error_message << '\n';
  if (cfg.format == Format::Json) out << to_json(rep).dump(2) << '\n';
  else if (!rep.error) out << to_text(rep);
  return static_cast<int>(rep.exit);
}

}  // namespace langdual::cli
