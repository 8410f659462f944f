#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "padlock/cards.hpp"
#include "padlock/estimate.hpp"
#include "padlock/formulas.hpp"
#include "padlock/gf.hpp"
#include "padlock/schemes.hpp"

namespace padlock::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  std::optional<int> n, k, m, q, pairs, cards, keys, hand, ranks, suits;
  std::optional<std::string> parts, degrees, x, weights, retained, piles, scheme, expect;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  double alpha = 0.01;
};

void add_shape_options(CLI::App* cmd, Params& p) {
  cmd->add_option("--n", p.n, "size parameter n");
  cmd->add_option("--k", p.k, "retained keys / covering keys");
  cmd->add_option("--m", p.m, "size parameter m");
  cmd->add_option("--q", p.q, "prime field order");
  cmd->add_option("--pairs", p.pairs, "key pairs (paired-triples)");
  cmd->add_option("--parts", p.parts, "comma-separated part sizes");
  cmd->add_option("--degrees", p.degrees, "comma-separated degree sequence");
  cmd->add_option("--weights", p.weights, "comma-separated box probabilities");
  cmd->add_option("--retained", p.retained, "comma-separated retained keys (permutation)");
  cmd->add_option("--cards", p.cards, "deck size (pile game)");
  cmd->add_option("--keys", p.keys, "key cards (pile game)");
  cmd->add_option("--hand", p.hand, "hand size (pile game)");
  cmd->add_option("--piles", p.piles, "comma-separated pile sizes (pile game)");
  cmd->add_option("--ranks", p.ranks, "ranks (clock)");
  cmd->add_option("--suits", p.suits, "suits (clock)");
  cmd->add_option("--budget", p.budget, "maximum outcomes to enumerate")->capture_default_str();
  cmd->add_option("--threads", p.threads, "worker threads")->capture_default_str();
}

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& what) {
  if (!v) throw UsageError(what + " needs " + flag);
  return *v;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty item in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<int> int_list(const std::optional<std::string>& text, const char* flag, const std::string& what) {
  std::vector<int> out;
  for (const auto& s : split(need(text, flag, what))) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<ExactProb> rational_list(const std::optional<std::string>& text, const char* flag, const std::string& what) {
  std::vector<ExactProb> out;
  for (const auto& s : split(need(text, flag, what))) out.push_back(parse_rational(s));
  return out;
}

Json rational(const ExactProb& p) {
  return Json{{"num", to_string(boost::multiprecision::numerator(p))},
              {"den", to_string(boost::multiprecision::denominator(p))}};
}

Json count_value(const Count& c) { return Json{{"count", to_string(c)}}; }
Json prob_value(const ExactProb& p) { return Json{{"probability", rational(p)}}; }
Json bool_value(bool b) { return Json{{"pass", b}}; }

Json params_json(const Params& p) {
  Json j = Json::object();
  const auto put_int = [&](const char* key, const std::optional<int>& v) {
    if (v) j[key] = *v;
  };
  const auto put_str = [&](const char* key, const std::optional<std::string>& v) {
    if (v) j[key] = *v;
  };
  put_int("n", p.n);
  put_int("k", p.k);
  put_int("m", p.m);
  put_int("q", p.q);
  put_int("pairs", p.pairs);
  put_str("parts", p.parts);
  put_str("degrees", p.degrees);
  put_str("weights", p.weights);
  put_str("retained", p.retained);
  put_int("cards", p.cards);
  put_int("keys", p.keys);
  put_int("hand", p.hand);
  put_str("piles", p.piles);
  put_int("ranks", p.ranks);
  put_int("suits", p.suits);
  put_str("scheme", p.scheme);
  put_str("x", p.x);
  return j;
}

SchemeSpec scheme_from(const std::string& name, const Params& p) {
  if (name == "uniform") return UniformIID{need(p.n, "--n", name), p.k.value_or(1)};
  if (name == "weighted") return WeightedIID{rational_list(p.weights, "--weights", name), p.k.value_or(1)};
  if (name == "permutation") {
    const int n = need(p.n, "--n", name);
    std::vector<KeyId> retained;
    if (p.retained) {
      retained = int_list(p.retained, "--retained", name);
    } else {
      for (int i = 0; i < p.k.value_or(1); ++i) retained.push_back(i);
    }
    return Permutation{n, retained};
  }
  if (name == "odd-perm3") return OddPermutation3{};
  if (name == "paired-triples") return PairedTriples{need(p.pairs ? p.pairs : p.n, "--pairs", name)};
  if (name == "degree") return DegreeConditioned{int_list(p.degrees, "--degrees", name)};
  if (name == "bipartite") return Bipartite{need(p.m, "--m", name), need(p.n, "--n", name)};
  if (name == "multipartite") return Multipartite{int_list(p.parts, "--parts", name)};
  if (name == "keyring") return KeyRing{int_list(p.parts, "--parts", name)};
  throw UsageError("unknown scheme '" + name + "'");
}

bool is_scheme_name(const std::string& name) {
  static const std::vector<std::string> names{"uniform",        "weighted", "permutation", "odd-perm3", "paired-triples",
                                              "degree",         "bipartite", "multipartite", "keyring"};
  return std::find(names.begin(), names.end(), name) != names.end();
}

// Closed-form win probability of a scheme, when one applies.
std::optional<ExactProb> scheme_formula(const SchemeSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::optional<ExactProb> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, UniformIID>) {
          return ExactProb(s.retained, s.n);
        } else if constexpr (std::is_same_v<S, WeightedIID>) {
          ExactProb kept = 0;
          for (int i = 0; i < s.retained; ++i) kept += s.weights[static_cast<std::size_t>(i)];
          return kept;
        } else if constexpr (std::is_same_v<S, Permutation>) {
          return ExactProb(static_cast<long long>(s.retained.size()), s.n);
        } else if constexpr (std::is_same_v<S, OddPermutation3>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<S, PairedTriples>) {
          return ExactProb(formulas::hypergraph_count(s.pairs),
                           double_factorial_odd(static_cast<unsigned>(s.pairs)) *
                               ipow(Count(2 * s.pairs + 1), static_cast<unsigned>(s.pairs)));
        } else if constexpr (std::is_same_v<S, DegreeConditioned>) {
          return ExactProb(s.degrees.front(), static_cast<long long>(s.degrees.size()) - 1);
        } else if constexpr (std::is_same_v<S, Bipartite>) {
          return ExactProb(1, s.m);
        } else {
          return formulas::start_probability_multipartite(s.parts);
        }
      },
      spec);
}

struct Outcome {
  Json report;
  int code = kExitPass;
};

Json header(const std::string& command, const std::string& target, const Params& p) {
  Json j;
  j["command"] = command;
  j["target"] = target;
  j["params"] = params_json(p);
  return j;
}

void attach(Json& j, const Json& result, const std::optional<Json>& formula, std::optional<bool> match) {
  j["result"] = result;
  if (formula) j["formula_value"] = *formula;
  if (match) j["match"] = *match;
}

Outcome cmd_formula(const std::string& name, const Params& p) {
  Json j = header("formula", name, p);
  Json result;
  if (name == "cayley") {
    result = count_value(formulas::cayley(need(p.n, "--n", name)));
  } else if (name == "forests") {
    result = count_value(formulas::forest_count(need(p.n, "--n", name), need(p.k, "--k", name)));
  } else if (name == "parking") {
    result = count_value(formulas::parking_count(need(p.n, "--n", name)));
  } else if (name == "hypergraph") {
    result = count_value(formulas::hypergraph_count(need(p.n, "--n", name)));
  } else if (name == "degree-trees") {
    result = count_value(formulas::degree_tree_count(int_list(p.degrees, "--degrees", name)));
  } else if (name == "catalan") {
    result = count_value(formulas::catalan(need(p.n, "--n", name)));
  } else if (name == "bipartite") {
    result = count_value(formulas::bipartite_count(need(p.m, "--m", name), need(p.n, "--n", name)));
  } else if (name == "multipartite") {
    result = count_value(formulas::multipartite_count(int_list(p.parts, "--parts", name)));
  } else if (name == "multipartite-start") {
    result = prob_value(formulas::start_probability_multipartite(int_list(p.parts, "--parts", name)));
  } else if (name == "fk") {
    result = prob_value(formulas::fk(rational_list(p.x, "--x", name)));
  } else if (name == "fk-det") {
    result = prob_value(formulas::fk_det(rational_list(p.x, "--x", name)));
  } else if (name == "nilpotent") {
    result = count_value(formulas::nilpotent_count(need(p.q, "--q", name), need(p.n, "--n", name)));
  } else if (name == "nilpotent-product") {
    result = prob_value(
        formulas::nilpotent_product_probability(need(p.q, "--q", name), need(p.m, "--m", name), need(p.n, "--n", name)));
  } else {
    throw UsageError("unknown formula '" + name + "'");
  }
  attach(j, result, std::nullopt, std::nullopt);
  return {j, kExitPass};
}

Outcome enumerate_report(Json j, const Count& space, const Count& wins, const std::optional<ExactProb>& formula) {
  const ExactProb prob = make_prob(wins, space);
  j["space"] = to_string(space);
  j["wins"] = to_string(wins);
  std::optional<bool> match;
  std::optional<Json> formula_json;
  if (formula) {
    formula_json = prob_value(*formula);
    match = *formula == prob;
  }
  attach(j, prob_value(prob), formula_json, match);
  return {j, match.value_or(true) ? kExitPass : kExitFail};
}

Outcome cmd_enumerate(const std::string& name, const Params& p) {
  Json j = header("enumerate", name, p);
  const EnumOptions opts{p.budget, p.threads};
  if (is_scheme_name(name)) {
    const SchemeSpec spec = scheme_from(name, p);
    validate(spec);
    const auto tally = exact_win_tally(spec, opts);
    return enumerate_report(j, tally.total, tally.wins, scheme_formula(spec));
  }
  if (name == "nilpotent") {
    const int q = need(p.q, "--q", name);
    const int n = need(p.n, "--n", name);
    const gf::PrimeField f(q);
    const auto total = checked_size(ipow(Count(q), static_cast<unsigned>(n * n)), p.budget, "enumerate nilpotent");
    std::uint64_t w = 0;
    for (std::uint64_t i = 0; i < total; ++i) w += wins(gf::linear_placement(gf::FMatrix::from_index(f, n, n, i), p.budget)) ? 1 : 0;
    return enumerate_report(j, total, w, ExactProb(formulas::nilpotent_count(q, n), Count(total)));
  }
  if (name == "nilpotent-product") {
    const int q = need(p.q, "--q", name);
    const int m = need(p.m, "--m", name);
    const int n = need(p.n, "--n", name);
    const gf::PrimeField f(q);
    const auto per = checked_size(ipow(Count(q), static_cast<unsigned>(m * n)), p.budget, "enumerate nilpotent-product");
    const auto total = checked_size(Count(per) * per, p.budget, "enumerate nilpotent-product");
    std::uint64_t w = 0;
    for (std::uint64_t a = 0; a < per; ++a) {
      const auto ma = gf::FMatrix::from_index(f, m, n, a);
      for (std::uint64_t b = 0; b < per; ++b) {
        w += wins(gf::bipartite_linear_placement(ma, gf::FMatrix::from_index(f, n, m, b), p.budget)) ? 1 : 0;
      }
    }
    return enumerate_report(j, total, w, formulas::nilpotent_product_probability(q, m, n));
  }
  if (name == "cycles") {
    const int n = need(p.n, "--n", name);
    const int k = need(p.k, "--k", name);
    const ExactProb prob = cycle_cover_probability(n, k);
    const Count space = factorial(static_cast<unsigned>(n));
    return enumerate_report(j, space, Count(prob * space), ExactProb(k, n));
  }
  if (name == "parking") {
    const int n = need(p.n, "--n", name);
    const Count space = ipow(Count(n), static_cast<unsigned>(n - 1));
    return enumerate_report(j, space, left_to_right_solvent_count(n, opts),
                            ExactProb(formulas::parking_count(n), space));
  }
  if (name == "pile") {
    const int cards_n = need(p.cards, "--cards", name);
    const int keys = need(p.keys, "--keys", name);
    const auto sizes = int_list(p.piles, "--piles", name);
    if (static_cast<int>(sizes.size()) != keys) throw UsageError("pile needs one --piles entry per key");
    cards::PileLayout layout{need(p.hand, "--hand", name), {}};
    for (int i = 0; i < keys; ++i) layout.piles.push_back({i, sizes[static_cast<std::size_t>(i)]});
    const auto deck = cards::key_deck(cards_n, keys);
    const ExactProb prob = cards::exact_pile_game_probability(deck, layout, p.budget);
    Count space = factorial(static_cast<unsigned>(cards_n)) / factorial(static_cast<unsigned>(cards_n - keys));
    return enumerate_report(j, space, Count(prob * space), ExactProb(layout.hand_size, cards_n));
  }
  if (name == "clock") {
    const int ranks = need(p.ranks, "--ranks", name);
    const int suits = need(p.suits, "--suits", name);
    Count space = factorial(static_cast<unsigned>(ranks * suits));
    for (int r = 0; r < ranks; ++r) space /= factorial(static_cast<unsigned>(suits));
    const ExactProb prob = cards::exact_clock_probability(ranks, suits, p.budget);
    return enumerate_report(j, space, Count(prob * space), ExactProb(1, ranks));
  }
  if (name == "catalan-pilesplit" || name == "catalan-stackdeal") {
    const int n = need(p.n, "--n", name);
    const bool split_deal = name == "catalan-pilesplit";
    const Count space = split_deal ? binomial(static_cast<unsigned>(2 * n + 1), static_cast<unsigned>(n))
                                   : binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n));
    const Count w = split_deal ? cards::catalan_pilesplit_count(n, p.budget) : cards::catalan_stackdeal_count(n, p.budget);
    return enumerate_report(j, space, w, ExactProb(formulas::catalan(n), space));
  }
  throw UsageError("unknown enumeration target '" + name + "'");
}

Target target_from(const std::string& name, const Params& p) {
  if (is_scheme_name(name)) return scheme_from(name, p);
  if (name == "hearts") return CardGame::Hearts;
  if (name == "lazy-hearts") return CardGame::LazyHearts;
  if (name == "clock") return CardGame::Clock;
  if (name == "barbier") return CardGame::Barbier;
  if (name == "lazy-hcp") return CardGame::LazyHcp;
  if (name == "hcp-reach") return CardGame::HcpReach;
  if (name == "linear") return LinearGame{need(p.q, "--q", name), need(p.n, "--n", name), 0};
  if (name == "linear-bipartite") return LinearGame{need(p.q, "--q", name), need(p.m, "--m", name), need(p.n, "--n", name)};
  throw UsageError("unknown simulation target '" + name + "'");
}

Json trial_json(const TrialReport& r) {
  Json j;
  j["trials"] = std::to_string(r.trials);
  j["wins"] = std::to_string(r.wins);
  j["seed"] = std::to_string(r.seed);
  j["estimate"] = rational(r.estimate);
  j["estimate_decimal"] = to_double(r.estimate);
  j["wilson"] = Json{{"alpha", r.alpha}, {"lo", r.lo}, {"hi", r.hi}};
  return j;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PADLOCK_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("PADLOCK_SEED is not an unsigned integer: '") + env + "'");
  }
  return 1;
}

Outcome cmd_simulate(const std::string& name, Params p) {
  if (p.trials == 0) throw UsageError("--trials must be at least 1");
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  const Target target = target_from(name, p);
  if (const auto* spec = std::get_if<SchemeSpec>(&target)) validate(*spec);
  const std::uint64_t seed = p.seed ? *p.seed : default_seed();
  Json j = header("simulate", name, p);
  const auto report = monte_carlo(target, p.trials, seed, p.threads, p.alpha);
  std::optional<Json> formula;
  std::optional<bool> match;
  if (p.expect) {
    ExactProb expected;
    try {
      expected = parse_rational(*p.expect);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--expect: ") + e.what());
    }
    formula = prob_value(expected);
    match = report.contains(expected);
  }
  attach(j, trial_json(report), formula, match);
  return {j, match.value_or(true) ? kExitPass : kExitFail};
}

Outcome cmd_verify(const std::string& check, const Params& p) {
  Json j = header("verify", check, p);
  bool pass = false;
  if (check == "martingale") {
    const auto spec = scheme_from(need(p.scheme, "--scheme", check), p);
    const auto r = martingale_check_all(spec, p.budget);
    pass = r.holds;
    j["checks"] = r.checks;
    j["failures"] = r.failures;
  } else if (check == "monomials") {
    const auto r = monomial_martingale_check_all(int_list(p.parts, "--parts", check), p.budget);
    pass = r.holds;
    j["checks"] = r.checks;
    j["failures"] = r.failures;
  } else if (check == "stopped-value") {
    const auto spec = scheme_from(need(p.scheme, "--scheme", check), p);
    const auto r = stopped_value_equals_probability(spec, p.budget);
    pass = r.holds;
    j["win_probability"] = rational(r.win_probability);
    j["start_value"] = rational(r.start_value);
  } else if (check == "keyring-equivalence") {
    pass = keyring_equivalence_check(int_list(p.parts, "--parts", check), {p.budget, p.threads});
  } else if (check == "round-uniformity") {
    const int q = need(p.q, "--q", check);
    const int n = need(p.n, "--n", check);
    pass = p.m ? gf::bipartite_round_uniformity_check(q, *p.m, n, p.budget) : gf::round_uniformity_check(q, n, p.budget);
  } else if (check == "pile-invariance") {
    pass = cards::pile_invariance_check(need(p.cards, "--cards", check), need(p.keys, "--keys", check),
                                        need(p.hand, "--hand", check), p.budget);
  } else {
    throw UsageError("unknown check '" + check + "'");
  }
  attach(j, bool_value(pass), std::nullopt, std::nullopt);
  return {j, pass ? kExitPass : kExitFail};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Padlock solitaire: exact enumeration, closed forms and simulation"};
  app.name("padlock");
  app.require_subcommand(1);
  Params p;
  std::string name;

  auto* formula = app.add_subcommand("formula", "evaluate a closed form");
  formula->add_option("name", name, "cayley, forests, parking, hypergraph, degree-trees, catalan, bipartite, "
                                    "multipartite, multipartite-start, fk, fk-det, nilpotent, nilpotent-product")
      ->required();
  add_shape_options(formula, p);
  formula->add_option("--x", p.x, "comma-separated rationals X_1,...,X_k");

  auto* enumerate = app.add_subcommand("enumerate", "exact win probability by exhaustion");
  enumerate->add_option("target", name, "a scheme name, nilpotent, nilpotent-product, cycles, parking, pile, clock, "
                                        "catalan-pilesplit or catalan-stackdeal")
      ->required();
  add_shape_options(enumerate, p);

  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo with a Wilson interval");
  simulate->add_option("target", name, "a scheme name, hearts, lazy-hearts, clock, barbier, lazy-hcp, hcp-reach, "
                                       "linear or linear-bipartite")
      ->required();
  add_shape_options(simulate, p);
  simulate->add_option("--trials", p.trials, "number of trials")->capture_default_str();
  simulate->add_option("--seed", p.seed, "64-bit seed (default: PADLOCK_SEED or 1)");
  simulate->add_option("--expect", p.expect, "fail unless the interval contains this probability");
  simulate->add_option("--alpha", p.alpha, "interval level is 1 - alpha")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run an exact property check");
  verify->add_option("check", name, "martingale, monomials, stopped-value, keyring-equivalence, round-uniformity, "
                                    "pile-invariance")
      ->required();
  add_shape_options(verify, p);
  verify->add_option("--scheme", p.scheme, "scheme for martingale and stopped-value");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "padlock: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Outcome o;
    if (*formula) {
      o = cmd_formula(name, p);
    } else if (*enumerate) {
      o = cmd_enumerate(name, p);
    } else if (*simulate) {
      o = cmd_simulate(name, p);
    } else {
      o = cmd_verify(name, p);
    }
    out << o.report.dump(2) << "\n";
    return o.code;
  } catch (const TooLarge& e) {
    err << "padlock: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UsageError& e) {
    err << "padlock: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "padlock: invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotEquiprobable& e) {
    err << "padlock: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "padlock: invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace padlock::cli
