#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hermite/duality/bgg.hpp"
#include "hermite/duality/certificate.hpp"
#include "hermite/duality/psi.hpp"
#include "hermite/en/schur_complexes.hpp"
#include "hermite/io/json.hpp"

using namespace hermite;
using io::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInvalidInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int b = 3;
  std::string v1 = "sl2";
  std::uint64_t seed = 1;
  int window = -1;
  std::string format = "json";
  std::string out;
  bool compare_classical = false;
  std::string preset = "generic";
  int f = 4;
  int g = 2;
  int i = 1;
  int d = 2;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + o.out);
  file << text;
}

V1Embedding load_v1(const Options& o) {
  if (o.v1 == "sl2") return sl2_embedding(o.b);
  if (o.v1 == "random") return random_embedding(o.b, o.seed);
  if (o.v1.rfind("file:", 0) == 0) {
    const std::string path = o.v1.substr(5);
    std::ifstream in(path);
    if (!in) throw InputError("cannot read spanning matrix file " + path);
    ordered_json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    try {
      return make_embedding(o.b, io::matrix_from_json(j), path);
    } catch (const std::exception& e) {
      throw InputError(std::string("invalid V1: ") + e.what());
    }
  }
  throw InputError("--v1 must be sl2, random or file:PATH");
}

int cmd_hermite(const Options& o) {
  if (o.b < 2) throw InputError("hermite needs b >= 2");
  const HermiteMatrix h = hermite_matrix(sl2_embedding(o.b));
  const bool classical = o.compare_classical;
  if (classical && o.b != 3) throw InputError("--compare-classical is only available for b = 3");
  const SparseMatrix c = classical ? classical_hermite_matrix_b3() : SparseMatrix();
  const DiffReport diff = classical ? diff_report(h.matrix, c, h.row_weights) : DiffReport{};
  if (o.format == "json") {
    ordered_json j = io::to_json(h);
    if (classical) {
      j["classical"] = io::to_json(c);
      j["diff"] = io::to_json(diff);
    }
    emit(o, io::dump(j));
  } else if (o.format == "csv") {
    std::string s = io::to_csv(h.matrix, h.row_labels, h.col_labels);
    if (classical) s += "\n" + io::to_csv(c, h.row_labels, h.col_labels);
    emit(o, s);
  } else {
    std::ostringstream os;
    os << "psi_{" << o.b << ",0} for V1 = Sym^" << 2 * o.b - 2 << " U (scaled by " << h.scale << ")\n"
       << io::to_pretty(h.matrix, h.row_labels, h.col_labels);
    if (classical) {
      os << "\nclassical isomorphism\n" << io::to_pretty(c, h.row_labels, h.col_labels) << "\ndiagonal blocks:\n";
      for (const auto& blk : diff.blocks) {
        os << "  rows " << blk.first << "-" << blk.last << (blk.equal ? " agree" : " differ") << "\n";
      }
      os << "off-block entries " << (diff.off_block_equal ? "agree" : "differ") << "\n";
    }
    emit(o, os.str());
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  if (o.b < 2) throw InputError("verify needs b >= 2");
  const int window = o.window < 0 ? 3 * o.b : o.window;
  if (window < 2 * o.b) throw InputError("--window must be at least 2b");
  const V1Embedding emb = load_v1(o);
  if (emb.dim() != 2 * o.b - 1) {
    throw InputError("dim V1 = " + std::to_string(emb.dim()) + ", expected " + std::to_string(2 * o.b - 1));
  }
  const DualityCertificate cert = verify_self_duality(emb, window);
  std::optional<BggReport> p;
  std::optional<BggReport> phat;
  if (cert.ok()) {
    p = bgg_generation_check(emb, BggSide::P);
    phat = bgg_generation_check(emb, BggSide::PHat);
  }
  const bool ok = cert.ok() && p->ok() && phat->ok();
  std::string stage;
  if (!cert.ok()) stage = to_string(cert.status);
  else if (!p->ok()) stage = "generation of P";
  else if (!phat->ok()) stage = "generation of P-hat";

  if (o.format == "json") {
    ordered_json j = {{"ok", ok}};
    if (!ok) j["failed_stage"] = stage;
    j["certificate"] = io::to_json(cert);
    if (p) j["generation"] = {io::to_json(*p), io::to_json(*phat)};
    emit(o, io::dump(j));
  } else if (o.format == "csv") {
    std::ostringstream os;
    os << "degree,rank_P,rank_dual,rank_f,rank_g,contained,invertible\n";
    for (const auto& d : cert.degrees) {
      os << d.degree << ',' << d.source_rank << ',' << d.dual_rank << ',' << d.rank_f << ',' << d.rank_g << ','
         << d.contained << ',' << d.invertible << '\n';
    }
    emit(o, os.str());
  } else {
    std::ostringstream os;
    os << "b = " << o.b << ", V1 = " << emb.description << "\n";
    for (const auto& line : cert.transcript) os << "  " << line << "\n";
    for (const auto* r : {p ? &*p : nullptr, phat ? &*phat : nullptr}) {
      if (!r) continue;
      for (const auto& c : r->checks) {
        os << "  " << c.name;
        if (c.rows) os << " (" << c.rows << "x" << c.cols << ", rank " << c.rank << ")";
        os << ": " << (c.ok ? "ok" : "FAIL") << "\n";
      }
      os << "  " << r->conclusion << "\n";
    }
    os << (ok ? "verified\n" : "FAILED at " + stage + "\n");
    emit(o, os.str());
  }
  if (!ok) std::cerr << "verification failed: " << stage << (cert.failure.empty() ? "" : ": " + cert.failure) << "\n";
  if (cert.status == CertificateStatus::PreconditionFailed) return kInvalidInput;
  return ok ? kOk : kVerificationFailed;
}

int cmd_en(const Options& o) {
  PolyMap phi;
  int i = o.i;
  if (o.preset == "buchsbaum-rim") {
    phi = generic_phi(o.f, o.g);
    i = 1;
  } else if (o.preset == "hankel") {
    if (o.d < 1 || o.b < 1 || o.d < o.b) throw InputError("hankel needs d >= b >= 1");
    phi = hankel_phi(o.d, o.b);
  } else if (o.preset == "generic") {
    if (o.g < 1 || o.f < o.g) throw InputError("generic needs f >= g >= 1");
    phi = generic_phi(o.f, o.g);
  } else {
    throw InputError("unknown preset " + o.preset);
  }
  const ENComplex c = en_complex(phi, i);
  const CheckResult check = verify_complex(c.complex);
  if (o.format == "json") {
    ordered_json j = {{"preset", o.preset}, {"i", i}, {"kind", to_string(c.kind)}, {"d_squared_zero", check.ok}};
    j["phi"] = io::to_json(phi.matrix(), static_cast<std::size_t>(phi.nvars()));
    j["complex"] = io::to_json(c.complex);
    emit(o, io::dump(j));
  } else if (o.format == "csv") {
    std::ostringstream os;
    os << "degree,rank,twists\n";
    for (int h = c.complex.first_degree(); h <= c.complex.last_degree(); ++h) {
      os << h << ',' << c.complex.term(h).rank() << ',';
      const auto tw = c.complex.term(h).twists();
      for (std::size_t k = 0; k < tw.size(); ++k) os << (k ? " " : "") << tw[k];
      os << '\n';
    }
    emit(o, os.str());
  } else {
    std::ostringstream os;
    os << "C_" << i << "(phi), " << to_string(c.kind) << "\nphi =\n";
    for (std::size_t r = 0; r < phi.matrix().rows(); ++r) {
      os << " ";
      for (std::size_t col = 0; col < phi.matrix().cols(); ++col) os << "  " << phi.matrix().at(r, col);
      os << "\n";
    }
    os << "ranks:";
    for (auto r : c.complex.ranks()) os << " " << r;
    os << "\nfirst degree: " << c.complex.first_degree() << "\nd^2 = 0: " << (check.ok ? "yes" : "no") << "\n";
    emit(o, os.str());
  }
  return check.ok ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite reciprocity and generalized Eagon-Northcott complexes"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--out", o.out, "Write output to this path");
  };

  auto* hermite = app.add_subcommand("hermite", "Emit the psi_{b,0} Hermite matrix for V1 = Sym^{2b-2} U");
  hermite->add_option("--b", o.b, "b >= 2");
  hermite->add_flag("--compare-classical", o.compare_classical, "Also emit the classical matrix and a diff (b = 3)");
  common(hermite);

  auto* verify = app.add_subcommand("verify", "Certify self-duality of Sym^{b-1}(phi|V1)");
  verify->add_option("--b", o.b, "b >= 2");
  verify->add_option("--v1", o.v1, "sl2 | random | file:PATH");
  verify->add_option("--seed", o.seed, "Seed for --v1 random");
  verify->add_option("--window", o.window, "Internal-degree window, at least 2b (default 3b)");
  common(verify);

  auto* en = app.add_subcommand("en", "Build a generalized Eagon-Northcott complex C_i(phi)");
  en->add_option("--preset", o.preset, "generic | buchsbaum-rim | hankel")
      ->check(CLI::IsMember({"generic", "buchsbaum-rim", "hankel"}));
  en->add_option("--f", o.f, "Rank of the source (generic, buchsbaum-rim)");
  en->add_option("--g", o.g, "Rank of the target (generic, buchsbaum-rim)");
  en->add_option("--i", o.i, "Index of the complex");
  en->add_option("--d", o.d, "Hankel: source rank minus one");
  en->add_option("--b", o.b, "Hankel: target rank minus one");
  common(en);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }
  if (en->parsed() && en->count("--b") == 0) o.b = 1;
  try {
    if (hermite->parsed()) return cmd_hermite(o);
    if (verify->parsed()) return cmd_verify(o);
    return cmd_en(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}
