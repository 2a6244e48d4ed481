#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmds/commands.hpp"

namespace {

std::vector<std::uint32_t> parse_modulus(const std::string& text) {
  std::vector<std::uint32_t> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    coeffs.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return coeffs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify NMDS self-dual codes over odd-characteristic finite fields"};
  app.require_subcommand(1);

  nmds::ConstructOptions construct;
  std::string modulus;
  std::vector<std::int64_t> indices;
  std::uint64_t distance_budget = 0;
  auto* c = app.add_subcommand("construct", "Build a code from a theorem recipe");
  c->add_option("--theorem", construct.theorem, "Theorem id: 3.3, 3.4, 3.5, 3.6 or 3.7")->required();
  for (const char* name : {"q", "n", "r", "e", "f", "t", "s", "l", "p", "m"}) {
    c->add_option_function<std::int64_t>(
        std::string("--") + name,
        [&construct, name](std::int64_t v) { construct.params[name] = v; },
        std::string("Recipe parameter ") + name);
  }
  c->add_option("--indices", indices, "Coset indices for theorem 3.4")->delimiter(',');
  c->add_option("--modulus", modulus, "Field modulus coefficients c0,...,cm (monic)");
  c->add_option("--out", construct.output_path, "Output document path (default: stdout)");
  c->add_option("--distance-budget", distance_budget, "Maximum codewords to enumerate");

  std::string verify_path;
  std::uint64_t verify_budget = 0;
  auto* v = app.add_subcommand("verify", "Re-verify a code document");
  v->add_option("input", verify_path, "Document path")->required();
  v->add_option("--distance-budget", verify_budget, "Maximum codewords to enumerate");

  nmds::ClassifySetOptions classify;
  std::string classify_modulus;
  auto* cs = app.add_subcommand("classify-set", "Zero-sum test and rank classification of C(A,k,1)");
  cs->add_option("--q", classify.q, "Field order")->required();
  cs->add_option("--elements", classify.elements, "Comma-separated elements of A")
      ->required()
      ->delimiter(',');
  cs->add_option("--k", classify.k, "Dimension k")->required();
  cs->add_option("--modulus", classify_modulus, "Field modulus coefficients c0,...,cm");

  std::uint64_t scan_q = 0;
  bool scan_list = false;
  auto* sc = app.add_subcommand("scan", "Count the code lengths reachable for q");
  sc->add_option("--q", scan_q, "Field order")->required();
  sc->add_flag("--list", scan_list, "Print every length and the theorems reaching it");

  auto* self = app.add_subcommand("selfcheck", "Run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : nmds::kExitInvalid;
  }

  try {
    if (c->parsed()) {
      if (!indices.empty()) construct.indices = indices;
      if (!modulus.empty()) construct.modulus = parse_modulus(modulus);
      if (distance_budget) construct.distance_budget = distance_budget;
      return nmds::cmd_construct(construct, std::cout, std::cerr);
    }
    if (v->parsed()) {
      return nmds::cmd_verify(verify_path,
                              verify_budget ? std::optional<std::uint64_t>(verify_budget)
                                            : std::nullopt,
                              std::cout, std::cerr);
    }
    if (cs->parsed()) {
      if (!classify_modulus.empty()) classify.modulus = parse_modulus(classify_modulus);
      return nmds::cmd_classify_set(classify, std::cout, std::cerr);
    }
    if (sc->parsed()) return nmds::cmd_scan(scan_q, scan_list, std::cout, std::cerr);
    if (self->parsed()) return nmds::cmd_selfcheck(std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number in " << e.what() << "\n";
    return nmds::kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range\n";
    return nmds::kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return nmds::kExitInvalid;
}
