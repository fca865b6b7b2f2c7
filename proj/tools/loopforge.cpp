// loopforge: tables, group orders and theorem checks for Cayley-Dickson loops.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "loopforge/io.hpp"
#include "loopforge/looptable.hpp"
#include "loopforge/mltgroups.hpp"
#include "loopforge/permgroup.hpp"
#include "loopforge/suite.hpp"

namespace lf = loopforge;

namespace {

constexpr int kUsage = 2;

struct CliConfig {
  std::string command;
  unsigned n = 0;
  std::string mode = "auto";
  std::size_t cap = lf::kDefaultClosureCap;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
};

std::optional<lf::Mode> parse_mode(const std::string& m) {
  if (m == "exhaustive") return lf::Mode::exhaustive;
  if (m == "rank") return lf::Mode::rank;
  return std::nullopt;
}

unsigned thread_count() {
  if (const char* env = std::getenv("LOOPFORGE_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

/// Runs `write` against --out or standard output.
int emit(const CliConfig& cfg, const std::function<void(std::ostream&)>& write) {
  if (cfg.out.empty() || cfg.out == "-") {
    write(std::cout);
    return 0;
  }
  std::ofstream file(cfg.out);
  if (!file) {
    std::cerr << "cannot open " << cfg.out << " for writing\n";
    return kUsage;
  }
  write(file);
  return 0;
}

int cmd_table(const CliConfig& cfg) {
  if (cfg.n > lf::kMaxTableDimension) {
    std::cerr << "table: n must be at most " << lf::kMaxTableDimension << "\n";
    return kUsage;
  }
  const lf::CayleyTable t = lf::cd_table(cfg.n);
  return emit(cfg, [&](std::ostream& os) {
    if (cfg.format == "csv") {
      lf::write_table_csv(os, t);
    } else if (cfg.format == "json") {
      os << lf::table_json(t).dump(2) << '\n';
    } else {
      lf::write_table_text(os, t);
    }
  });
}

int cmd_verify(const CliConfig& cfg) {
  if (cfg.n < 2 || cfg.n > lf::kMaxSuiteDimension) {
    std::cerr << "verify: n must be in 2.." << lf::kMaxSuiteDimension << "\n";
    return kUsage;
  }
  if (cfg.format == "csv") {
    std::cerr << "verify: format must be json or text\n";
    return kUsage;
  }
  lf::SuiteOptions opt;
  opt.mode = parse_mode(cfg.mode);
  opt.seed = cfg.seed;
  opt.cap = cfg.cap;
  opt.threads = thread_count();
  const lf::VerificationReport report = lf::theorem_suite(cfg.n, opt);
  const int io = emit(cfg, [&](std::ostream& os) {
    if (cfg.format == "json") {
      os << lf::report_json(report).dump(2) << '\n';
    } else {
      lf::write_report_text(os, report);
    }
  });
  return io != 0 ? io : report.exit_code();
}

struct OrderRow {
  std::string name;
  std::optional<lf::GroupOrder> order;
};

std::optional<lf::GroupOrder> closure_order(const lf::GroupHandle& h) {
  if (h.truncated) return std::nullopt;
  return h.order;
}

int cmd_groups(const CliConfig& cfg) {
  if (cfg.n < 2 || cfg.n > lf::kMaxGroupDimension) {
    std::cerr << "groups: n must be in 2.." << lf::kMaxGroupDimension << "\n";
    return kUsage;
  }
  if (cfg.format == "csv") {
    std::cerr << "groups: format must be json or text\n";
    return kUsage;
  }
  const lf::Mode mode = lf::resolve_mode(parse_mode(cfg.mode), cfg.n);
  const lf::CDLoop q(cfg.n);
  const lf::KConstruction kc = lf::build_K(q);
  std::vector<OrderRow> rows;
  if (mode == lf::Mode::exhaustive) {
    const lf::GroupHandle mlt = lf::mlt_group(q, mode, cfg.cap);
    const lf::GroupHandle inn = lf::detail::stabilizer_handle("Inn", mlt);
    const lf::GroupHandle mlt_l = lf::onesided_mlt(q, lf::Side::left, mode, cfg.cap);
    const lf::GroupHandle inn_l = lf::detail::stabilizer_handle("Inn_l", mlt_l);
    rows.push_back({"Inn", closure_order(inn)});
    rows.push_back({"Mlt", closure_order(mlt)});
    rows.push_back({"Inn_l", closure_order(inn_l)});
    rows.push_back({"Mlt_l", closure_order(mlt_l)});
    const lf::GroupClosure K = lf::closure(kc.generators, cfg.cap);
    rows.push_back({"K", K.truncated ? std::nullopt
                                     : std::optional(lf::GroupOrder::count(K.size()))});
    std::optional<lf::GroupOrder> n_order;
    if (!inn.truncated) {
      std::vector<lf::Permutation> gens = inn.closure->generators;
      gens.push_back(q.left(q.negate(0)));
      const lf::GroupClosure N = lf::closure(gens, cfg.cap);
      if (!N.truncated) n_order = lf::GroupOrder::count(N.size());
    }
    rows.push_back({"N", n_order});
  } else {
    const lf::InnerGenerators ig = lf::inner_generators(q);
    const lf::RankStructure two = lf::rank_structure_mlt(q, ig);
    const lf::RankStructure left = lf::rank_structure_onesided(q, ig, lf::Side::left);
    auto valid = [](const lf::RankStructure& r, lf::GroupOrder g) {
      return r.valid() ? std::optional(g) : std::nullopt;
    };
    const lf::GroupOrder qorder = lf::GroupOrder::pow2(cfg.n + 1);
    rows.push_back({"Inn", valid(two, two.inner_order())});
    rows.push_back({"Mlt", valid(two, qorder * two.inner_order())});
    rows.push_back({"Inn_l", valid(left, left.inner_order())});
    rows.push_back({"Mlt_l", valid(left, qorder * left.inner_order())});
    rows.push_back({"K", kc.valid() ? std::optional(kc.order) : std::nullopt});
    rows.push_back({"N", valid(two, lf::build_N(q, two.inner).order)});
  }

  bool incomplete = false;
  const int io = emit(cfg, [&](std::ostream& os) {
    if (cfg.format == "json") {
      nlohmann::ordered_json j;
      j["n"] = cfg.n;
      j["mode"] = lf::to_string(mode);
      for (const auto& r : rows) {
        j["orders"][r.name] = r.order ? lf::order_json(*r.order) : nlohmann::ordered_json(nullptr);
      }
      os << j.dump(2) << '\n';
    } else {
      for (const auto& r : rows) {
        os << r.name << std::string(7 - r.name.size(), ' ')
           << (r.order ? r.order->to_string() : "unavailable (closure cap reached)") << '\n';
      }
    }
  });
  for (const auto& r : rows) incomplete = incomplete || !r.order;
  if (io != 0) return io;
  return incomplete ? kUsage : 0;
}

int cmd_aut(const CliConfig& cfg) {
  if (cfg.n > 4) {
    std::cerr << "aut: the automorphism search supports n <= 4\n";
    return kUsage;
  }
  if (cfg.format == "csv") {
    std::cerr << "aut: format must be json or text\n";
    return kUsage;
  }
  const auto maps = lf::automorphism_group(lf::cd_table(cfg.n));
  return emit(cfg, [&](std::ostream& os) {
    if (cfg.format == "json") {
      nlohmann::ordered_json j;
      j["n"] = cfg.n;
      j["order"] = maps.size();
      os << j.dump(2) << '\n';
    } else {
      os << maps.size() << '\n';
    }
  });
}

/// Generator files: mlt, mlt_l, mlt_r, inn and k, one permutation per line.
int cmd_export(const CliConfig& cfg) {
  if (cfg.n < 2 || cfg.n > lf::kMaxGroupDimension) {
    std::cerr << "export: n must be in 2.." << lf::kMaxGroupDimension << "\n";
    return kUsage;
  }
  const lf::CDLoop q(cfg.n);
  std::vector<std::pair<std::string, std::vector<lf::Permutation>>> sets;
  sets.emplace_back("mlt", lf::mlt_generators(q, true, true));
  sets.emplace_back("mlt_l", lf::mlt_generators(q, true, false));
  sets.emplace_back("mlt_r", lf::mlt_generators(q, false, true));
  std::vector<lf::Permutation> inn;
  lf::PermutationSet seen(q.order());
  auto add = [&](const lf::Permutation& p) {
    if (!p.is_identity() && seen.insert(p)) inn.push_back(p);
  };
  for (std::size_t x = 0; x < q.classes(); ++x) add(q.T(x));
  for (std::size_t x = 0; x < q.classes(); ++x) {
    for (std::size_t y = 0; y < q.classes(); ++y) {
      add(q.Lxy(x, y));
      add(q.Rxy(x, y));
    }
  }
  sets.emplace_back("inn", std::move(inn));
  sets.emplace_back("k", lf::build_K(q).generators);

  if (cfg.out.empty() || cfg.out == "-") {
    for (const auto& [name, gens] : sets) {
      std::cout << "# " << name << '\n';
      lf::write_generators(std::cout, gens);
    }
    return 0;
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  for (const auto& [name, gens] : sets) {
    const auto path = std::filesystem::path(cfg.out) / ("q" + std::to_string(cfg.n) + "_" + name + ".txt");
    std::ofstream file(path);
    if (!file) {
      std::cerr << "cannot write " << path.string() << "\n";
      return kUsage;
    }
    lf::write_generators(file, gens);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley-Dickson loops: tables, multiplication groups and theorem checks"};
  app.require_subcommand(1);
  CliConfig cfg;

  const std::map<std::string, std::function<int(const CliConfig&)>> handlers = {
      {"table", cmd_table}, {"verify", cmd_verify}, {"groups", cmd_groups},
      {"aut", cmd_aut},     {"export", cmd_export},
  };
  const std::map<std::string, std::string> about = {
      {"table", "print the multiplication table of Q_n"},
      {"verify", "run the theorem suite and write a report"},
      {"groups", "orders of Inn, Mlt, Inn_l, Mlt_l, K and N"},
      {"aut", "order of Aut(Q_n) by backtracking (n <= 4)"},
      {"export", "write generator permutation files (--out is a directory)"},
  };
  for (const auto& [name, text] : about) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--n", cfg.n, "dimension: Q_n has 2^(n+1) elements")->required();
    sub->add_option("--mode", cfg.mode, "auto, exhaustive or rank")
        ->check(CLI::IsMember({"auto", "exhaustive", "rank"}));
    sub->add_option("--cap", cfg.cap, "closure element cap")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--out", cfg.out, "output path (default standard output)");
    sub->add_option("--format", cfg.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return handlers.at(cfg.command)(cfg);
  } catch (const lf::Error& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return kUsage;
  }
}
