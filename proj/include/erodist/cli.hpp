#pragma once

// Command-line front end. Reports are line-oriented "key<TAB>value" pairs on
// stdout; exit status is 0 on success, 1 on usage errors, 2 on invalid input.

#include "erodist/erosion.hpp"
#include "erodist/filtration.hpp"
#include "erodist/io.hpp"
#include "erodist/onedim.hpp"
#include "erodist/rank_invariant.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace erodist::cli {

namespace detail {

inline void print_distance(std::ostream& out, const Extended& d) {
  out << "distance\t" << d.fraction() << "\n";
  out << "decimal\t" << d.decimal() << "\n";
}

inline std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_rational(part));
  return v;
}

inline void require_compatible(const PersistenceModule& f, const PersistenceModule& g) {
  if (f.dim() != g.dim()) throw ValidationError("modules have different dimensions");
  if (!(f.coefficients() == g.coefficients())) throw ValidationError("modules have different coefficients");
}

/// Values of a one-dimensional function file, in the order of `names`.
inline std::vector<Rational> function_values(const NamedSizePair& f, const std::vector<std::string>& names,
                                             const std::string& what) {
  std::vector<Rational> out;
  for (const auto& name : names) {
    auto it = std::find(f.names.begin(), f.names.end(), name);
    if (it == f.names.end()) throw ValidationError(what + ": vertex '" + name + "' missing");
    const Point& v = f.pair.values[static_cast<std::size_t>(it - f.names.begin())];
    if (v.size() != 1) throw ValidationError(what + ": values must be one-dimensional");
    out.push_back(v[0]);
  }
  if (names.size() != f.names.size()) throw ValidationError(what + ": vertex sets differ");
  return out;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Erosion distances, rank invariants and diagrams of persistence modules", "erodist"};
  app.require_subcommand(1);

  std::string module_path, at;
  auto* rank = app.add_subcommand("rank", "Evaluate the rank invariant im F(a < b)");
  rank->add_option("module", module_path, "Module file")->required();
  rank->add_option("--at", at, "a1,...,an,b1,...,bn")->required();

  auto* dist = app.add_subcommand("dist", "Distances between two inputs");
  dist->require_subcommand(1);
  std::string first, second, family = "linear";
  bool projection = false, restricted = false;
  auto* erosion = dist->add_subcommand("erosion", "Erosion distance of two modules' rank invariants");
  erosion->add_option("m1", first, "First module file")->required();
  erosion->add_option("m2", second, "Second module file")->required();
  auto* proj_flag = erosion->add_flag("--projection", projection, "Use the adjoint sublinear projection");
  erosion->add_flag("--restricted", restricted, "Only require dominance on Dgm'")->excludes(proj_flag);
  erosion->add_option("--family", family, "Superlinear family")->check(CLI::IsMember({"linear", "floor"}));

  auto* interleaving = dist->add_subcommand("interleaving", "Interleaving distance of 1-D field modules");
  interleaving->add_option("m1", first, "First module file")->required();
  interleaving->add_option("m2", second, "Second module file")->required();
  auto* linf = dist->add_subcommand("linf", "Erosion distance of level-set invariants of two functions");
  linf->add_option("f1", first, "First function file")->required();
  linf->add_option("f2", second, "Second function file")->required();
  auto* npd = dist->add_subcommand("npd", "Natural pseudo-distance of size pairs on discrete spaces");
  npd->add_option("sp1", first, "First size-pair file")->required();
  npd->add_option("sp2", second, "Second size-pair file")->required();

  auto* diagram = app.add_subcommand("diagram", "Type-B diagram of a 1-D field module");
  diagram->add_option("module", module_path, "Module file")->required();

  std::string complex_path, output, coeff_name;
  std::size_t degree = 0;
  auto* filtration = app.add_subcommand("filtration", "Sublevel-set homology module of a complex with values");
  filtration->add_option("complex", complex_path, "Complex file")->required();
  filtration->add_option("--degree", degree, "Homology degree")->required();
  filtration->add_option("--coeff", coeff_name, "z, f2, f3, ...")->required();
  filtration->add_option("-o,--output", output, "Module file to write")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (rank->parsed()) {
      RankInvariant f(load_module(module_path));
      auto v = detail::parse_list(at);
      if (v.size() != 2 * f.dim()) throw ValidationError("--at needs " + std::to_string(2 * f.dim()) + " values");
      DgmPoint d{Point(v.begin(), v.begin() + static_cast<long>(f.dim())), Point(v.begin() + static_cast<long>(f.dim()), v.end())};
      if (!is_dgm_point(d)) throw ValidationError("--at: need a <= b with a != b");
      out << "object\t" << describe(f.evaluate(d)) << "\n";
    } else if (erosion->parsed()) {
      auto fm = load_module(first), gm = load_module(second);
      detail::require_compatible(fm, gm);
      RankInvariant f(std::move(fm)), g(std::move(gm));
      SuperlinearFamily fam(family == "floor" ? FamilyKind::FloorShift : FamilyKind::Linear, f.dim());
      ErosionReport r = projection   ? erosion_distance_projection(f, g, derive_adjoint_projection(fam))
                        : restricted ? erosion_distance_restricted(f, g, fam)
                                     : erosion_distance_family(f, g, fam);
      detail::print_distance(out, r.distance);
    } else if (interleaving->parsed()) {
      auto fm = load_module(first), gm = load_module(second);
      detail::require_compatible(fm, gm);
      detail::print_distance(out, interleaving_distance_1d(ConstructibleModule(std::move(fm)),
                                                           ConstructibleModule(std::move(gm))));
    } else if (linf->parsed()) {
      auto f = load_size_pair(first), g = load_size_pair(second);
      LevelSetInvariant fi(detail::function_values(f, f.names, first));
      LevelSetInvariant gi(detail::function_values(g, f.names, second));
      detail::print_distance(out, levelset_invariant_distance(fi, gi));
    } else if (npd->parsed()) {
      auto f = load_size_pair(first), g = load_size_pair(second);
      detail::print_distance(out, npd_bruteforce(f.pair, g.pair));
    } else if (diagram->parsed()) {
      TypeBDiagram dg = mobius_invert(ConstructibleModule(load_module(module_path)));
      for (const auto& p : dg.points())
        out << format_rational(p.birth) << ' ' << (p.death.is_infinite() ? "inf" : format_rational(p.death.value()))
            << ' ' << p.multiplicity << "\n";
    } else if (filtration->parsed()) {
      Coefficients coeff;
      if (coeff_name == "z") {
        coeff = Coefficients::integers();
      } else if (coeff_name.size() > 1 && coeff_name[0] == 'f' &&
                 coeff_name.find_first_not_of("0123456789", 1) == std::string::npos &&
                 is_prime(std::stoll(coeff_name.substr(1)))) {
        coeff = Coefficients::field(std::stoll(coeff_name.substr(1)));
      } else {
        err << "--coeff: expected z or f<prime>\n";
        return 1;
      }
      auto s = load_size_pair(complex_path);
      PersistenceModule m = module_from_size_pair(s.pair, degree, coeff);
      std::ofstream file(output);
      if (!file) throw ValidationError(output + ": cannot write");
      file << dump_module(m);
      out << "points\t" << m.num_points() << "\n";
      out << "output\t" << output << "\n";
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace erodist::cli
