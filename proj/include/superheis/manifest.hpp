#ifndef SUPERHEIS_MANIFEST_HPP
#define SUPERHEIS_MANIFEST_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "superheis/families.hpp"

namespace superheis {

inline const std::vector<std::string> kAllChecks = {
    "homomorphism", "unitarity", "skew", "bracket", "equivariance",
    "closure",      "shs",       "berezin"};

struct FamilyBlock {
  FamilyParams params;
  std::vector<std::string> checks = kAllChecks;
  int samples = 50;
};

struct Manifest {
  std::uint64_t seed = 3735928559ull;
  double tolerance = 1e-9;
  std::vector<FamilyBlock> families;
};

class ManifestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
inline double parse_real(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ManifestError("line " + std::to_string(line) + ": invalid number '" + v + "'");
  }
}
}  // namespace detail

/// Strict line-oriented parser: [run] and [family.N] sections, key = value
/// pairs, '#' comments. Unknown keys and sections are errors.
inline Manifest parse_manifest(const std::string& text) {
  Manifest m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  enum class Section { None, Run, Family };
  Section section = Section::None;
  FamilyBlock* current = nullptr;
  std::set<int> seen_families;

  auto finalize_family = [&](FamilyBlock& fb, int line_of_block) {
    try {
      fb.params.validate();
    } catch (const std::invalid_argument& e) {
      throw ManifestError(std::string(e.what()) +
                          " (family block starting near line " +
                          std::to_string(line_of_block) + ")");
    }
  };
  int block_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ManifestError("line " + std::to_string(lineno) + ": malformed section header");
      std::string name = detail::trim(line.substr(1, line.size() - 2));
      if (current) finalize_family(*current, block_line);
      current = nullptr;
      if (name == "run") {
        section = Section::Run;
      } else if (name.rfind("family.", 0) == 0) {
        int fam = 0;
        try {
          fam = std::stoi(name.substr(7));
        } catch (...) {
          throw ManifestError("line " + std::to_string(lineno) + ": bad family id");
        }
        if (fam < 1 || fam > 7)
          throw ManifestError("line " + std::to_string(lineno) + ": family id must be in 1..7");
        if (!seen_families.insert(fam).second)
          throw ManifestError("line " + std::to_string(lineno) + ": duplicate family block");
        section = Section::Family;
        FamilyBlock fb;
        fb.params = FamilyParams::defaults(fam);
        m.families.push_back(fb);
        current = &m.families.back();
        block_line = lineno;
      } else {
        throw ManifestError("line " + std::to_string(lineno) + ": unknown section [" + name + "]");
      }
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ManifestError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));

    if (section == Section::Run) {
      if (key == "seed") {
        m.seed = static_cast<std::uint64_t>(detail::parse_real(val, lineno));
      } else if (key == "tolerance") {
        m.tolerance = detail::parse_real(val, lineno);
        if (m.tolerance <= 0.0)
          throw ManifestError("line " + std::to_string(lineno) + ": tolerance must be positive");
      } else {
        throw ManifestError("line " + std::to_string(lineno) + ": unknown key '" + key +
                            "' in [run]");
      }
    } else if (section == Section::Family) {
      if (key == "k") {
        current->params.k = detail::parse_real(val, lineno);
      } else if (key == "ell" || key == "l") {
        current->params.ell = detail::parse_real(val, lineno);
      } else if (key == "p") {
        current->params.p = detail::parse_real(val, lineno);
      } else if (key == "kappa") {
        current->params.kappa = (val == "1" || val == "true" || val == "yes");
      } else if (key == "lambda") {
        current->params.lambda = (val == "1" || val == "true" || val == "yes");
      } else if (key == "samples") {
        current->samples = static_cast<int>(detail::parse_real(val, lineno));
        if (current->samples < 1)
          throw ManifestError("line " + std::to_string(lineno) + ": samples must be >= 1");
      } else if (key == "checks") {
        current->checks.clear();
        if (val == "all") {
          current->checks = kAllChecks;
        } else {
          std::istringstream cs(val);
          std::string item;
          while (std::getline(cs, item, ',')) {
            item = detail::trim(item);
            if (std::find(kAllChecks.begin(), kAllChecks.end(), item) == kAllChecks.end())
              throw ManifestError("line " + std::to_string(lineno) + ": unknown check '" + item +
                                  "'");
            current->checks.push_back(item);
          }
          if (current->checks.empty())
            throw ManifestError("line " + std::to_string(lineno) + ": empty checks list");
        }
      } else {
        throw ManifestError("line " + std::to_string(lineno) + ": unknown key '" + key +
                            "' in family block");
      }
    } else {
      throw ManifestError("line " + std::to_string(lineno) + ": key outside any section");
    }
  }
  if (current) finalize_family(*current, block_line);
  if (m.families.empty()) throw ManifestError("manifest has no family blocks");
  return m;
}

// ---------------------------------------------------------------------------
// Runner and report

struct CheckResult {
  int family = 0;  // 0 for group-level checks
  std::string check;
  int samples = 0;
  double max_residual = 0.0;
  std::string status;  // pass | flag | fail
  std::string notes;
};

struct Report {
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<CheckResult> checks;

  bool any_fail() const {
    for (auto& c : checks)
      if (c.status == "fail") return true;
    return false;
  }
};

namespace detail {
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

/// Stable machine-readable serialization; field order and float formatting
/// are fixed so identical runs are byte-identical.
inline std::string report_to_json(const Report& r) {
  std::ostringstream out;
  auto escape = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o;
  };
  out << "{\"checks\":[";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const CheckResult& c = r.checks[i];
    if (i) out << ",";
    out << "{\"family\":" << c.family << ",\"check\":\"" << escape(c.check)
        << "\",\"samples\":" << c.samples
        << ",\"max_residual\":" << detail::fmt_double(c.max_residual) << ",\"status\":\""
        << c.status << "\",\"notes\":\"" << escape(c.notes) << "\"}";
  }
  out << "],\"seed\":" << r.seed << ",\"tolerance\":" << detail::fmt_double(r.tolerance) << "}";
  return out.str();
}

/// Per-check RNG: mixes the run seed with family and check identity so the
/// result is independent of execution order.
inline std::mt19937_64 check_rng(std::uint64_t seed, int family, const std::string& check) {
  std::uint64_t h = seed;
  h ^= static_cast<std::uint64_t>(family) * 0x9e3779b97f4a7c15ull;
  for (char c : check) h = (h ^ static_cast<std::uint64_t>(c)) * 0x100000001b3ull;
  return std::mt19937_64(h);
}

inline Report run_manifest(const Manifest& m) {
  Report rep;
  rep.seed = m.seed;
  rep.tolerance = m.tolerance;
  Context ctx = Context::make();

  auto push = [&](int fam, const std::string& check, int samples, double resid,
                  const std::string& status, const std::string& notes) {
    rep.checks.push_back({fam, check, samples, resid, status, notes});
  };
  auto status_of = [&](double resid) { return resid <= m.tolerance ? "pass" : "fail"; };

  // Group-level checks always run.
  {
    double j = check_graded_jacobi(ctx.pool);
    push(0, "jacobi", 216, j, status_of(j), "graded Jacobi identity over all basis triples");
  }
  {
    auto rng = check_rng(m.seed, 0, "group");
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      GroupElement g = sample_group_element(ctx, rng);
      GroupElement h = sample_group_element(ctx, rng);
      GroupElement k = sample_group_element(ctx, rng);
      GroupElement lhs = multiply(multiply(g, h), k);
      GroupElement rhs = multiply(g, multiply(h, k));
      auto coord_resid = [](const GroupElement& x, const GroupElement& y) {
        return std::max({(x.a - y.a).max_abs(), (x.b - y.b).max_abs(), (x.c - y.c).max_abs(),
                         (x.alpha - y.alpha).max_abs(), (x.beta - y.beta).max_abs(),
                         (x.gamma - y.gamma).max_abs()});
      };
      worst = std::max(worst, coord_resid(lhs, rhs));
      GroupElement gi = multiply(g, inverse(g));
      worst = std::max(worst, coord_resid(gi, GroupElement::identity(ctx.pool)));
    }
    push(0, "group", 100, worst, status_of(worst), "associativity and inverse laws");
  }
  {
    auto rng = check_rng(m.seed, 0, "shcp");
    ShcpReport r = check_shcp_axioms(ctx.pool, rng, 20);
    double worst = r.max_residual();
    push(0, "shcp", 20, worst, status_of(worst), "Harish-Chandra pair axioms");
  }

  for (auto& fb : m.families) {
    int fam = fb.params.family;
    SuperHilbertSpec spec = hilbert_spec(ctx, fb.params);
    std::vector<SuperFunction> vectors = test_vectors(ctx, spec);
    bool report_mode = fam >= 4;  // rho_o carries the odd parameter kappa

    for (const std::string& check : fb.checks) {
      auto rng = check_rng(m.seed, fam, check);
      if (check == "homomorphism") {
        double r = check_homomorphism(ctx, fb.params, fb.samples, rng, vectors);
        push(fam, check, fb.samples, r, status_of(r), "");
      } else if (check == "unitarity") {
        double r = check_unitarity_rho_o(ctx, fb.params, fb.samples, rng, vectors);
        if (report_mode)
          push(fam, check, fb.samples, r, "flag",
               "rho_o is not an ordinary unitary representation for this family; "
               "kappa-dependent deviation recorded");
        else
          push(fam, check, fb.samples, r, status_of(r), "");
      } else if (check == "skew") {
        double worstA = 0.0, worstB = 0.0;
        for (int slot = 0; slot < 6; ++slot) {
          worstA = std::max(worstA,
                            check_graded_skew(ctx, fb.params, slot, vectors, SkewConvention::A));
          worstB = std::max(worstB,
                            check_graded_skew(ctx, fb.params, slot, vectors, SkewConvention::B));
        }
        std::string notes = "convention A residual " + detail::fmt_double(worstA) +
                            ", convention B residual " + detail::fmt_double(worstB);
        if (fam <= 3)
          push(fam, check, static_cast<int>(vectors.size()), worstA, status_of(worstA), notes);
        else
          push(fam, check, static_cast<int>(vectors.size()), worstA,
               worstA <= m.tolerance ? "pass" : "flag", notes);
      } else if (check == "bracket") {
        double r = check_bracket_compat(ctx, fb.params, vectors);
        push(fam, check, 15, r, status_of(r), "all 15 unordered basis pairs");
      } else if (check == "equivariance") {
        double r = check_equivariance(ctx, fb.params, fb.samples, rng, vectors);
        if (report_mode)
          push(fam, check, fb.samples, r, r <= m.tolerance ? "pass" : "flag",
               "report mode: rho_o not unitary for this family");
        else
          push(fam, check, fb.samples, r, status_of(r), "");
      } else if (check == "closure") {
        bool ok = check_domain_closure(ctx, fb.params, vectors, 4);
        push(fam, check, static_cast<int>(vectors.size()), ok ? 0.0 : 1.0,
             ok ? "pass" : "fail", "tau-words up to length 4 stay in the test class");
      } else if (check == "shs") {
        ShsReport r = check_shs_conditions(vectors, m.tolerance);
        bool shs2_expected = fam <= 2;
        bool ok = r.shs1_residual <= m.tolerance && r.boundedness_holds &&
                  r.shs2_holds == shs2_expected;
        std::string notes = std::string("SHS2 ") + (r.shs2_holds ? "holds" : "fails") +
                            " (expected " + (shs2_expected ? "holds" : "fails") +
                            "); boundedness constant " +
                            detail::fmt_double(r.boundedness_constant);
        push(fam, check, static_cast<int>(vectors.size()),
             std::max(r.shs1_residual, shs2_expected ? r.shs2_residual : 0.0),
             ok ? "pass" : "fail", notes);
      } else if (check == "berezin") {
        double r = check_berezin_realization(ctx, vectors);
        push(fam, check, static_cast<int>(vectors.size()), r,
             r <= 1e-10 ? "pass" : "fail",
             "Berezin-Lebesgue route vs displayed component formula");
      }
    }
  }

  // canonical order: family, then check name
  std::stable_sort(rep.checks.begin(), rep.checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     if (a.family != b.family) return a.family < b.family;
                     return a.check < b.check;
                   });
  return rep;
}

}  // namespace superheis

#endif  // SUPERHEIS_MANIFEST_HPP
