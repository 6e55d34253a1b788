// carpetlab: invariants of Bedford-McMullen self-affine carpets.
//
// Subcommands: analyze, compare, spectrum, components, boxcount, gamma,
// render. JSON goes to stdout (keys sorted, exact rationals as "p/q",
// high-precision reals as decimal strings), diagnostics to stderr.
// Exit codes: 0 ok, 1 parse/validation error, 2 enumeration budget exceeded.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "carpetlab/classify.hpp"
#include "carpetlab/errors.hpp"
#include "carpetlab/geometry.hpp"
#include "carpetlab/measure.hpp"
#include "carpetlab/spectrum.hpp"
#include "carpetlab/svg.hpp"
#include "carpetlab/version.hpp"

namespace {

using carpetlab::ApproxKind;
using carpetlab::BasicRectangle;
using carpetlab::CarpetProfile;
using carpetlab::CarpetSpec;
using carpetlab::EnumBudget;
using carpetlab::Error;
using carpetlab::Errc;
using carpetlab::Rational;
using carpetlab::Real;
using json = nlohmann::json;

struct RunConfig {
  long precision_bits = 256;
  long max_rank = 4;
  std::uint64_t enumeration_budget = 5'000'000;
  std::string output_format = "json";  // json | text

  int real_digits() const {
    return std::max(17, static_cast<int>(static_cast<double>(precision_bits) * 0.30103));
  }
  EnumBudget budget() const { return EnumBudget{enumeration_budget}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << content;
}

CarpetSpec load_spec(const std::string& path) { return carpetlab::parse_spec(read_file(path)); }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json carpet_json(const CarpetSpec& spec) {
  json digits = json::array();
  for (const auto& d : spec.digits()) digits.push_back(json::array({d.i, d.j}));
  return json{{"n", spec.n()}, {"m", spec.m()}, {"digits", digits}};
}

json sigma_json(const carpetlab::SigmaClass& sc) {
  if (sc.kind == carpetlab::SigmaClass::Kind::Irrational) return json{{"kind", "irrational"}};
  return json{{"kind", "rational"}, {"p", sc.p}, {"q", sc.q}, {"base", sc.base}};
}

json profile_json(const CarpetProfile& prof) {
  return json{
      {"a", prof.a},         {"N", prof.N},       {"rows", prof.rows},
      {"s", prof.s},         {"a_star", prof.a_star}, {"mult", prof.mult},
      {"vacant_row", prof.has_vacant_row},         {"sigma", sigma_json(prof.sigma_class)},
  };
}

json class_json(const carpetlab::ClassFlags& flags) {
  return json{
      {"totally_disconnected", carpetlab::to_string(flags.totally_disconnected)},
      {"disconnected_vacant", carpetlab::to_string(flags.disconnected_vacant)},
      {"disconnected_vacant_doubling", carpetlab::to_string(flags.disconnected_vacant_doubling)},
  };
}

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
  if (cfg.output_format == "text")
    std::cout << text;
  else
    std::cout << doc.dump(2) << "\n";
}

int run_analyze(const RunConfig& cfg, const std::string& file) {
  const CarpetSpec spec = load_spec(file);
  const CarpetProfile prof = carpetlab::profile(spec);
  const long prec = cfg.precision_bits;
  const int digits = cfg.real_digits();

  auto [amin, amax] = carpetlab::alpha_range(prof, prec);
  json doc{
      {"carpet", carpet_json(spec)},
      {"profile", profile_json(prof)},
      {"class", class_json(carpetlab::class_membership(prof))},
      {"doubling", carpetlab::is_doubling(prof)},
      {"regular", carpetlab::is_regular(prof)},
      {"dimensions",
       json{{"hausdorff", carpetlab::dim_hausdorff(prof, prec).to_string(digits)},
            {"box", carpetlab::dim_box(prof, prec).to_string(digits)},
            {"assouad", carpetlab::dim_assouad(prof, prec).to_string(digits)}}},
      {"alpha_range", json{{"alpha_min", amin.to_string(digits)}, {"alpha_max", amax.to_string(digits)}}},
      {"precision_bits", prec},
  };

  std::ostringstream text;
  text << "carpet n=" << spec.n() << " m=" << spec.m() << " N=" << prof.N << " s=" << prof.s << "\n";
  text << "distribution:";
  for (long a : prof.a) text << " " << a;
  text << "\nvacant row: " << (prof.has_vacant_row ? "yes" : "no")
       << "\ndoubling: " << (carpetlab::is_doubling(prof) ? "yes" : "no")
       << "\nregular: " << (carpetlab::is_regular(prof) ? "yes" : "no")
       << "\ntotally disconnected: " << carpetlab::to_string(carpetlab::total_disconnectedness(prof))
       << "\ndim_H  = " << carpetlab::dim_hausdorff(prof, prec).to_string(20)
       << "\ndim_B  = " << carpetlab::dim_box(prof, prec).to_string(20)
       << "\ndim_A  = " << carpetlab::dim_assouad(prof, prec).to_string(20)
       << "\nalpha  in [" << amin.to_string(20) << ", " << amax.to_string(20) << "]\n";
  emit(cfg, doc, text.str());
  return 0;
}

int run_compare(const RunConfig& cfg, const std::string& file_e, const std::string& file_f) {
  const CarpetSpec spec_e = load_spec(file_e);
  const CarpetSpec spec_f = load_spec(file_f);
  carpetlab::CompareConfig cc;
  cc.precision_bits = cfg.precision_bits;
  const carpetlab::InvariantReport report = carpetlab::compare(spec_e, spec_f, cc);

  json entries = json::array();
  for (const auto& entry : report.entries) {
    entries.push_back(json{
        {"name", entry.name},
        {"applicable", entry.applicable},
        {"conditional", entry.conditional},
        {"status", entry.status},
        {"detail", entry.detail},
    });
  }
  json doc{
      {"carpets", json{{"E", carpet_json(spec_e)}, {"F", carpet_json(spec_f)}}},
      {"class_flags", json{{"E", class_json(report.flags_e)}, {"F", class_json(report.flags_f)}}},
      {"invariants", entries},
      {"verdict", carpetlab::to_string(report.verdict)},
      {"witness", report.witness},
  };

  std::ostringstream text;
  text << "verdict: " << carpetlab::to_string(report.verdict);
  if (!report.witness.empty()) text << " (witness: " << report.witness << ")";
  text << "\n";
  for (const auto& entry : report.entries)
    text << "  " << entry.name << ": " << entry.status << "  [" << entry.detail << "]\n";
  emit(cfg, doc, text.str());
  return 0;
}

int run_spectrum(const RunConfig& cfg, const std::string& file, int grid,
                 const std::string& svg_out) {
  const CarpetSpec spec = load_spec(file);
  const CarpetProfile prof = carpetlab::profile(spec);
  const carpetlab::SpectrumCurve curve = carpetlab::sample_curve(prof, grid, cfg.precision_bits);
  const int digits = cfg.real_digits();

  json samples = json::array();
  for (const auto& s : curve.samples) {
    samples.push_back(json{{"t", s.t.to_string(digits)},
                           {"beta", s.beta.to_string(digits)},
                           {"alpha", s.alpha.to_string(digits)},
                           {"h", s.h.to_string(digits)}});
  }
  json doc{
      {"alpha_min", curve.alpha_min.to_string(digits)},
      {"alpha_max", curve.alpha_max.to_string(digits)},
      {"precision_bits", curve.precision_bits},
      {"samples", samples},
  };

  if (!svg_out.empty()) {
    std::vector<carpetlab::PlotPoint> pts;
    for (const auto& s : curve.samples) pts.push_back({s.alpha.to_double(), s.h.to_double()});
    write_file(svg_out, carpetlab::render_curve_svg(pts, "alpha", "h"));
    doc["svg"] = svg_out;
  }

  std::ostringstream text;
  text << "alpha range [" << curve.alpha_min.to_string(20) << ", " << curve.alpha_max.to_string(20)
       << "]\n";
  for (const auto& s : curve.samples)
    text << "  t=" << s.t.to_string(12) << " alpha=" << s.alpha.to_string(12)
         << " h=" << s.h.to_string(12) << "\n";
  emit(cfg, doc, text.str());
  return 0;
}

int run_components(const RunConfig& cfg, const std::string& file, long rank,
                   const std::string& kind_name, const std::string& svg_out, bool members) {
  const CarpetSpec spec = load_spec(file);
  const ApproxKind kind = kind_name == "square" ? ApproxKind::SquareApprox : ApproxKind::TildeApprox;
  const carpetlab::ComponentPartition part = carpetlab::components(spec, rank, kind, cfg.budget());

  json comps = json::array();
  for (const auto& cell : part.cells) {
    json c{{"size", cell.size()}};
    if (members) c["members"] = cell;
    comps.push_back(c);
  }
  json doc{
      {"rank", part.rank},
      {"kind", kind == ApproxKind::SquareApprox ? "square" : "tilde"},
      {"piece_count", part.piece_count()},
      {"component_count", part.cells.size()},
      {"max_cardinality", part.max_cardinality()},
      {"components", comps},
  };

  if (!svg_out.empty()) {
    // cells of the requested approximation, colored by their own components
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
    auto add = [&](const carpetlab::SymbolWord& xw, const carpetlab::SymbolWord& yw) {
      std::uint64_t x = 0, y = 0;
      for (int s : xw.symbols) x = x * static_cast<std::uint64_t>(spec.n()) + static_cast<std::uint64_t>(s);
      for (int s : yw.symbols) y = y * static_cast<std::uint64_t>(spec.m()) + static_cast<std::uint64_t>(s);
      cells.emplace_back(x, y);
    };
    if (kind == ApproxKind::TildeApprox)
      carpetlab::for_each_basic(spec, rank, cfg.budget(),
                                [&](const BasicRectangle& r) { add(r.x_word, r.y_word); });
    else
      carpetlab::for_each_square(spec, rank, cfg.budget(),
                                 [&](const carpetlab::ApproximateSquare& q) { add(q.x_word, q.y_word); });
    std::vector<std::uint32_t> component_of(part.piece_count(), 0);
    for (std::uint32_t c = 0; c < part.cells.size(); ++c)
      for (std::uint32_t member : part.cells[c]) component_of[member] = c;
    std::uint64_t grid_w = 1, grid_h = 1;
    for (long i = 0; i < rank; ++i) grid_w *= static_cast<std::uint64_t>(spec.n());
    const long y_rank = (kind == ApproxKind::TildeApprox) ? rank : carpetlab::ell(spec.n(), spec.m(), rank);
    for (long i = 0; i < y_rank; ++i) grid_h *= static_cast<std::uint64_t>(spec.m());
    write_file(svg_out, carpetlab::render_cells_svg(grid_w, grid_h, cells, component_of, 720));
    doc["svg"] = svg_out;
  }

  std::ostringstream text;
  text << "rank " << part.rank << " " << (kind == ApproxKind::SquareApprox ? "square" : "tilde")
       << ": " << part.piece_count() << " pieces, " << part.cells.size()
       << " components, max cardinality " << part.max_cardinality() << "\n";
  emit(cfg, doc, text.str());
  return 0;
}

BasicRectangle parse_rect_word(const CarpetSpec& spec, const std::string& word) {
  // "i,j;i,j;..." digit pairs from the outside in
  BasicRectangle rect;
  rect.x_word.alphabet_bound = spec.n();
  rect.y_word.alphabet_bound = spec.m();
  std::stringstream ss(word);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw Error(Errc::ParseError, "--rect wants \"i,j;i,j;...\" digit pairs");
    try {
      rect.x_word.symbols.push_back(std::stoi(pair.substr(0, comma)));
      rect.y_word.symbols.push_back(std::stoi(pair.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "--rect wants integer digit pairs");
    }
    ++rect.rank;
  }
  if (rect.rank == 0) throw Error(Errc::ParseError, "--rect needs at least one digit pair");
  if (!carpetlab::is_valid_rectangle(spec, rect))
    throw Error(Errc::ParseError, "--rect is not a basic rectangle of this carpet");
  return rect;
}

int run_boxcount(const RunConfig& cfg, const std::string& file, long depth,
                 const std::string& rect_word) {
  const CarpetSpec spec = load_spec(file);
  std::optional<BasicRectangle> restrict_to;
  if (!rect_word.empty()) restrict_to = parse_rect_word(spec, rect_word);
  const carpetlab::BoxCountReport rep =
      carpetlab::box_count_report(spec, depth, restrict_to, cfg.budget());
  const double c2 = static_cast<double>(rep.comparability_constant);

  json doc{
      {"depth", rep.depth},
      {"delta", "1/" + std::to_string(spec.n()) + "^" + std::to_string(rep.depth)},
      {"count", rep.count},
      {"counting", "cover count of the rank-q approximate squares"},
      {"comparability_constant", rep.comparability_constant},
      {"mu_restrict", rep.mu_restrict.to_string()},
      {"envelope",
       json{{"center", fmt_double(rep.envelope_center)},
            {"lower", fmt_double(rep.envelope_center / c2)},
            {"upper", fmt_double(rep.envelope_center * c2)}}},
      {"within_envelope", rep.within_envelope},
  };
  if (!rect_word.empty()) doc["restrict"] = rect_word;

  std::ostringstream text;
  text << "depth " << rep.depth << ": cover count " << rep.count << " (envelope "
       << fmt_double(rep.envelope_center / c2) << " .. " << fmt_double(rep.envelope_center * c2)
       << ", C = " << rep.comparability_constant << ")\n";
  emit(cfg, doc, text.str());
  return 0;
}

int run_gamma(const RunConfig& cfg, const std::string& file_e, const std::string& file_f,
              long kmax, long prime) {
  const CarpetProfile prof_e = carpetlab::profile(load_spec(file_e));
  const CarpetProfile prof_f = carpetlab::profile(load_spec(file_f));

  json rows = json::array();
  std::ostringstream text;
  for (long k = 1; k <= kmax; ++k) {
    const Rational g = carpetlab::gamma(k, prof_e, prof_f);
    const long v = carpetlab::vp(g, carpetlab::BigInt(prime));
    rows.push_back(json{{"k", k}, {"gamma", g.to_string()}, {"v_p", v}});
    text << "  k=" << k << "  gamma=" << g.to_string() << "  v_" << prime << "=" << v << "\n";
  }
  json doc{{"prime", prime}, {"rows", rows}};
  emit(cfg, doc, text.str());
  return 0;
}

int run_render(const RunConfig& cfg, const std::string& file, long rank, const std::string& out,
               bool color_components, int size) {
  const CarpetSpec spec = load_spec(file);
  carpetlab::RenderOptions opt;
  opt.pixel_size = size;
  opt.color_components = color_components;
  opt.budget = cfg.budget();
  write_file(out, carpetlab::render_svg(spec, rank, opt));

  std::uint64_t count = 1;
  for (long i = 0; i < rank; ++i) count *= static_cast<std::uint64_t>(spec.digit_count());
  json doc{{"written", out}, {"rank", rank}, {"rectangles", count}};
  emit(cfg, doc, "wrote " + out + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz-classification invariants of Bedford-McMullen self-affine carpets"};
  app.set_version_flag("--version", carpetlab::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--precision", cfg.precision_bits, "fractional bits for transcendental evaluation")
      ->envname("CARPETLAB_PRECISION")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--budget", cfg.enumeration_budget, "enumeration piece budget");
  app.add_option("--max-rank", cfg.max_rank, "default rank for rank-taking subcommands")
      ->check(CLI::Range(1L, 64L));
  app.add_option("--format", cfg.output_format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  std::string file, file2, svg_out, rect_word, kind = "tilde", out;
  long rank = -1, depth = -1, kmax = 10, prime = 2;
  int grid = 9, size = 720;
  bool members = false, color = false;

  auto* analyze = app.add_subcommand("analyze", "single-carpet report");
  analyze->fallthrough();
  analyze->add_option("file", file)->required();

  auto* compare = app.add_subcommand("compare", "invariant battery for a carpet pair");
  compare->fallthrough();
  compare->add_option("file1", file)->required();
  compare->add_option("file2", file2)->required();

  auto* spectrum = app.add_subcommand("spectrum", "multifractal spectrum samples");
  spectrum->fallthrough();
  spectrum->add_option("file", file)->required();
  spectrum->add_option("--grid", grid, "interior alpha sample count")->check(CLI::Range(1, 100000));
  spectrum->add_option("--svg", svg_out, "write an (alpha, h) plot");

  auto* components = app.add_subcommand("components", "connected components of an approximation");
  components->fallthrough();
  components->add_option("file", file)->required();
  components->add_option("--rank", rank, "approximation rank");
  components->add_option("--kind", kind)->check(CLI::IsMember({"tilde", "square"}));
  components->add_option("--svg", svg_out, "write a component-colored rendering");
  components->add_flag("--members", members, "list member indices per component");

  auto* boxcount = app.add_subcommand("boxcount", "mesh-box cover count");
  boxcount->fallthrough();
  boxcount->add_option("file", file)->required();
  boxcount->add_option("--depth", depth, "mesh depth q (delta = n^-q)");
  boxcount->add_option("--rect", rect_word, "restrict to a basic rectangle: \"i,j;i,j;...\"");

  auto* gamma_cmd = app.add_subcommand("gamma", "obstruction sequence of a carpet pair");
  gamma_cmd->fallthrough();
  gamma_cmd->add_option("file1", file)->required();
  gamma_cmd->add_option("file2", file2)->required();
  gamma_cmd->add_option("--kmax", kmax)->check(CLI::Range(1L, 100000L));
  gamma_cmd->add_option("--prime", prime)->required();

  auto* render = app.add_subcommand("render", "SVG of the rank-k approximation");
  render->fallthrough();
  render->add_option("file", file)->required();
  render->add_option("--rank", rank, "approximation rank");
  render->add_option("--out", out)->required();
  render->add_flag("--color-components", color);
  render->add_option("--size", size, "viewport pixels")->check(CLI::Range(16, 8192));

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(cfg, file);
    if (compare->parsed()) return run_compare(cfg, file, file2);
    if (spectrum->parsed()) return run_spectrum(cfg, file, grid, svg_out);
    if (components->parsed())
      return run_components(cfg, file, rank < 0 ? cfg.max_rank : rank, kind, svg_out, members);
    if (boxcount->parsed()) return run_boxcount(cfg, file, depth < 0 ? cfg.max_rank : depth, rect_word);
    if (gamma_cmd->parsed()) return run_gamma(cfg, file, file2, kmax, prime);
    if (render->parsed()) return run_render(cfg, file, rank < 0 ? cfg.max_rank : rank, out, color, size);
  } catch (const Error& e) {
    json err{{"error", json{{"kind", Error::name(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return e.code() == Errc::BudgetExceeded ? 2 : 1;
  } catch (const std::exception& e) {
    json err{{"error", json{{"kind", "InternalError"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
