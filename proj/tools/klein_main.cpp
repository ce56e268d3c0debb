// klein: command-line front end. Exit status 0 on success, 1 when a
// verification fails, 2 on usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "serialize.hpp"

using namespace klein;
using io::InputError;
using io::json;

namespace {

struct Context {
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 0;
};

struct VerificationFailed {};

void write(const Context& ctx, const std::string& s) {
  if (ctx.output.empty()) {
    std::cout << s;
    if (!s.empty() && s.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(ctx.output);
  if (!out) throw InputError("cannot write '" + ctx.output + "'");
  out << s;
  if (!s.empty() && s.back() != '\n') out << "\n";
}

// data objects are always JSON
void emit_json(const Context& ctx, const json& j) { write(ctx, j.dump(2)); }

void emit(const Context& ctx, const json& j, const std::string& text) {
  write(ctx, ctx.format == "json" ? j.dump(2) : text);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t to_size(const std::string& s) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size() || v < 0) throw InputError("");
    return static_cast<std::size_t>(v);
  } catch (...) {
    throw InputError("not a nonnegative integer: '" + s + "'");
  }
}

// "1..4", "2" or "1,3"
std::vector<std::size_t> parse_degrees(const std::string& s) {
  std::vector<std::size_t> out;
  auto dots = s.find("..");
  if (dots != std::string::npos) {
    std::size_t lo = to_size(s.substr(0, dots)), hi = to_size(s.substr(dots + 2));
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  } else {
    for (const auto& p : split(s, ',')) out.push_back(to_size(p));
  }
  if (out.empty()) throw InputError("empty degree list");
  for (auto n : out)
    if (n == 0) throw InputError("degrees must be positive");
  return out;
}

TubeId parse_tube(const std::string& s) {
  try {
    return TubeId::parse(s);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

// tube/j/m, or tube/m for homogeneous tubes
TubeLabel parse_label(const std::string& s) {
  auto parts = split(s, '/');
  if (parts.size() != 2 && parts.size() != 3) throw InputError("summand must look like special:1/1/4 or hom:t^2+t+1/1");
  TubeLabel l;
  l.id = parse_tube(parts[0]);
  l.j = parts.size() == 3 ? static_cast<int>(to_size(parts[1])) : 0;
  l.m = to_size(parts.back());
  if (l.id.special && l.j != 1 && l.j != 2) throw InputError("special tubes need j = 1 or 2");
  if (!l.id.special) l.j = 0;
  if (l.m == 0) throw InputError("m must be positive");
  return l;
}

std::vector<TubeLabel> labels_from(const std::vector<std::string>& inline_labels, const std::string& file) {
  std::vector<TubeLabel> out;
  if (!file.empty()) {
    json j = io::read_file(file);
    if (j.is_object() && j.contains("summands")) j = j["summands"];
    if (!j.is_array()) throw InputError("summand list must be a JSON array");
    for (const auto& x : j) out.push_back(io::label_from_json(x));
  }
  for (const auto& s : inline_labels) out.push_back(parse_label(s));
  return out;
}

std::vector<TubeModule> modules_of(const std::vector<TubeLabel>& ls) {
  std::vector<TubeModule> out;
  for (const auto& l : ls) out.push_back(tube_module(l));
  return out;
}

CohClass parse_class(const std::string& s, std::size_t length) {
  CohClass c;
  if (!s.empty())
    for (const auto& p : split(s, ',')) c.push_back(Int(static_cast<long>(to_size(p))));
  if (c.size() != length)
    throw InputError("class needs " + std::to_string(length) + " coordinates, got " + std::to_string(c.size()));
  return c;
}

S3Word parse_word(const std::string& s) {
  S3Word w;
  if (s == "id" || s.empty()) return w;
  std::string t;
  for (char ch : s)
    if (ch != ',' && ch != ' ') t += ch;
  for (std::size_t i = 0; i < t.size(); i += 2) {
    std::string g = t.substr(i, 2);
    if (g == "t2")
      w.push_back(S3Generator::tau2);
    else if (g == "t3")
      w.push_back(S3Generator::tau3);
    else
      throw InputError("word must be made of t2 and t3, e.g. t2t3");
  }
  return w;
}

KLattice read_lattice(const std::string& path) { return io::lattice_from_json(io::read_file(path)); }

// tube/j/m/k entries, collected into standard data
StandardData data_from(const std::vector<std::string>& entries, const std::string& file, std::size_t n) {
  if (!file.empty()) return io::standard_data_from_json(io::read_file(file));
  StandardData d;
  for (const auto& s : entries) {
    auto parts = split(s, '/');
    if (parts.size() < 3) throw InputError("entry must look like special:1/1/2/0 or hom:t^2+t+1/2/1");
    const std::size_t k = to_size(parts.back());
    parts.pop_back();
    std::string label = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) label += "/" + parts[i];
    TubeLabel l = parse_label(label);
    auto it = std::find_if(d.tubes.begin(), d.tubes.end(), [&](const auto& t) { return t.first == l.id; });
    if (it == d.tubes.end()) {
      d.tubes.push_back({l.id, {}});
      it = d.tubes.end() - 1;
    }
    it->second.push_back({l.j, l.m, k});
    if (l.id.special) d.parity = n % 2 == 0 ? "even" : "odd";
  }
  std::sort(d.tubes.begin(), d.tubes.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return d;
}

json canonical_json(const CanonicalForm& cf, const SumCohomology& H) {
  IntVector divs;
  for (const auto& p : H.parts) divs.insert(divs.end(), p.group.divisors.begin(), p.group.divisors.end());
  return {{"data", io::to_json(cf.data)},
          {"delta", cf.delta},
          {"rest", cf.rest},
          {"integral", cf.integral},
          {"image", io::class_json(cf.image, divs)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular lattices over the Kleinian 4-group: cohomology, canonical forms and group extensions"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--format", ctx.format, "output format for reports")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");
  app.add_option("-o,--output", ctx.output, "write output to a file");
  app.add_option("--seed", ctx.seed, "seed for randomized steps")->default_val(0);
  app.fallthrough();

  std::function<void()> action;
  auto on = [&](CLI::App* sub, std::function<void()> f) { sub->callback([&action, f] { action = f; }); };

  // shared option storage
  std::string tube, lattice_path, rep_path, word = "id", degrees = "1..4", summands_file, class_text, data_file,
                                           rest_file, first_path, second_path;
  int j = 0;
  std::size_t m = 1, n = 2, max_m = 3;
  unsigned level = 3;
  bool dual = false, serial = false;
  std::vector<std::string> summands, entries, rest;
  std::vector<int> only;

  auto* build = app.add_subcommand("build-tube", "lattice of a tube module");
  build->add_option("--tube", tube, "special:0|1|inf or hom:<poly>")->required();
  build->add_option("--j", j, "1 or 2 for special tubes");
  build->add_option("--m", m, "position in the tube")->required();
  on(build, [&] {
    TubeLabel l{parse_tube(tube), j, m};
    if (l.id.special && j != 1 && j != 2) throw InputError("special tubes need --j 1 or 2");
    if (!l.id.special) l.j = 0;
    if (m == 0) throw InputError("m must be positive");
    emit_json(ctx, io::to_json(tube_module(l).lattice));
  });

  auto* phi_cmd = app.add_subcommand("phi", "representation of an A-lattice");
  phi_cmd->add_option("-m,--lattice", lattice_path, "KLattice JSON")->required();
  on(phi_cmd, [&] { emit_json(ctx, io::to_json(phi(read_lattice(lattice_path)))); });

  auto* lat = app.add_subcommand("lattice-of", "lattice of a representation in R");
  lat->add_option("-r,--rep", rep_path, "representation JSON")->required();
  on(lat, [&] { emit_json(ctx, io::to_json(lattice_of(io::rep_from_json(io::read_file(rep_path))))); });

  auto* dim = app.add_subcommand("dim", "dimension vector of an A-lattice");
  dim->add_option("-m,--lattice", lattice_path, "KLattice JSON")->required();
  on(dim, [&] {
    DimVector d = dim_vector(read_lattice(lattice_path));
    emit(ctx, io::to_json(d), d.to_string());
  });

  auto* coh = app.add_subcommand("cohomology", "H^n(K, M), or H^n(K, DM) with --dual");
  coh->add_option("-m,--lattice", lattice_path, "KLattice JSON")->required();
  coh->add_option("-n,--degree", n, "degree")->default_val(2);
  coh->add_flag("--dual", dual, "cohomology of the dual colattice");
  coh->add_option("--level", level, "truncation level for --dual")->default_val(3);
  on(coh, [&] {
    KLattice M = read_lattice(lattice_path);
    if (n == 0) throw InputError("degree must be positive");
    CohomologyGroup H = dual ? colattice_cohomology(M, n, level) : cohomology_group(M, n);
    std::string text;
    for (std::size_t i = 0; i < H.divisors.size(); ++i) text += (i ? "," : "") + H.divisors[i].get_str();
    emit(ctx, io::to_json(H), text.empty() ? "trivial" : text);
  });

  auto add_verify = [&](const char* name, const char* help, bool eta) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-m,--lattice", lattice_path, "KLattice JSON of an indecomposable regular lattice")->required();
    sub->add_option("--degrees", degrees, "e.g. 1..4")->default_val("1..4");
    if (eta) sub->add_option("--level", level, "truncation level")->default_val(3);
    on(sub, [&, eta] {
      KLattice M = read_lattice(lattice_path);
      json results = json::array();
      std::string text;
      bool all = true;
      for (std::size_t d : parse_degrees(degrees)) {
        const bool ok = eta ? verify_eta_iso(M, d, level) : verify_xi_iso(M, d);
        all = all && ok;
        results.push_back({{"n", d}, {"ok", ok}});
        text += "n=" + std::to_string(d) + (ok ? " ok\n" : " FAILED\n");
      }
      emit(ctx, results, text);
      if (!all) throw VerificationFailed{};
    });
  };
  add_verify("xi-verify", "xi classes over a basis of M(n) form a basis of H^n", false);
  add_verify("eta-verify", "eta classes over a basis of N(n) form a basis of H^n(K, DM)", true);

  auto* syz = app.add_subcommand("syzygy", "kernel of the projective cover");
  syz->add_option("-m,--lattice", lattice_path, "KLattice JSON")->required();
  on(syz, [&] { emit_json(ctx, io::to_json(syzygy(read_lattice(lattice_path)))); });

  auto* endring = app.add_subcommand("endring-check", "End(T) against its closed form");
  endring->add_option("--tube", tube, "tube id")->required();
  endring->add_option("--j", j, "1 or 2 for special tubes");
  endring->add_option("--m", m, "position in the tube")->required();
  on(endring, [&] {
    TubeLabel l{parse_tube(tube), j, m};
    if (!l.id.special) l.j = 0;
    EndRingReport r = end_ring_check(tube_module(l));
    json jr = {{"lifted_equals_direct", r.lifted_equals_direct},
               {"equals_stated", r.equals_stated},
               {"lift_independent", r.lift_independent},
               {"end_lambda_dim", r.end_lambda_dim},
               {"detail", r.detail},
               {"ok", r.ok()}};
    std::ostringstream t;
    t << l.to_string() << ": " << (r.ok() ? "ok" : "FAILED") << " (dim End_Lambda = " << r.end_lambda_dim << ")";
    if (!r.detail.empty()) t << "\n" << r.detail;
    emit(ctx, jr, t.str());
    if (!r.ok()) throw VerificationFailed{};
  });

  auto* s3 = app.add_subcommand("s3", "apply an automorphism of K to a tube id or a lattice");
  s3->add_option("--word", word, "t2, t3 or a product such as t2t3")->default_val("id");
  auto* s3_tube = s3->add_option("--tube", tube, "tube id");
  s3->add_option("-m,--lattice", lattice_path, "KLattice JSON")->excludes(s3_tube);
  on(s3, [&] {
    const S3Word w = parse_word(word);
    if (!lattice_path.empty()) {
      KLattice M = read_lattice(lattice_path);
      for (auto g : w) M = twist(M, g);
      emit_json(ctx, io::to_json(M));
      return;
    }
    if (tube.empty()) throw InputError("give --tube or --lattice");
    TubeId id = parse_tube(tube);
    for (auto g : w) id = s3_on_tube(id, g);
    emit(ctx, io::to_json(id), id.to_string());
  });

  auto add_canonical = [&](const char* name, const char* help, bool co) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--summand", summands, "tube/j/m, repeatable (e.g. special:1/1/4)");
    sub->add_option("--summands", summands_file, "JSON array of tube labels");
    sub->add_option("--class", class_text, "class coordinates, comma separated");
    sub->add_option("-n,--degree", n, "degree")->default_val(2);
    if (co) sub->add_option("--level", level, "truncation level")->default_val(3);
    on(sub, [&, co] {
      auto ls = labels_from(summands, summands_file);
      if (ls.empty()) throw InputError("no summands given");
      if (n == 0) throw InputError("degree must be positive");
      auto ms = modules_of(ls);
      SumCohomology H = co ? co_sum_cohomology(ms, n, level) : sum_cohomology(ms, n);
      CohClass e = parse_class(class_text, H.class_length());
      CanonicalForm cf = co ? co_canonical_form(H, e, ctx.seed) : canonical_form(H, e, ctx.seed);
      emit(ctx, canonical_json(cf, H), cf.data.to_string());
    });
  };
  add_canonical("canonical", "standard data of a class on a sum of tube modules", false);
  add_canonical("co-canonical", "costandard data of a class on a sum of duals", true);

  auto add_present = [&](const char* name, const char* help, bool ch) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--data", data_file, "StandardData JSON");
    sub->add_option("--entry", entries, "tube/j/m/k, repeatable (e.g. special:1/1/2/0)");
    sub->add_option("--rest", rest, "tube/j/m of a complementary summand, repeatable");
    sub->add_option("--rest-file", rest_file, "JSON array of complementary tube labels");
    if (ch) sub->add_option("--level", level, "truncation level")->default_val(3);
    on(sub, [&, ch] {
      StandardData d = data_from(entries, data_file, 2);
      auto r = labels_from(rest, rest_file);
      GroupPresentation p = ch ? ch_presentation(d, r, level) : cr_presentation(d, r);
      const bool ok = satisfies_presentation(extension_of(p), p);
      json jp = io::to_json(p);
      jp["relations_hold"] = ok;
      emit(ctx, jp, p.to_text() + (ok ? "relations hold in the constructed extension\n" : "RELATIONS FAIL\n"));
      if (!ok) throw VerificationFailed{};
    });
  };
  add_present("present-cr", "presentation of Cr(Delta), optionally extended by M_0", false);
  add_present("present-ch", "presentation of Ch(Delta), optionally extended by N_0", true);

  auto* cls = app.add_subcommand("classify", "decide whether two extensions are isomorphic");
  cls->add_option("--first", first_path, "JSON {summands, class, dual}")->required();
  cls->add_option("--second", second_path, "JSON {summands, class, dual}")->required();
  on(cls, [&] {
    auto load = [](const std::string& path, bool& is_dual) {
      json jg = io::read_file(path);
      if (!jg.is_object() || !jg.contains("summands") || !jg.contains("class"))
        throw InputError(path + ": needs 'summands' and 'class'");
      is_dual = jg.value("dual", false);
      std::vector<TubeLabel> ls;
      for (const auto& x : jg["summands"]) ls.push_back(io::label_from_json(x));
      CohClass c;
      const json& cj = jg["class"].is_object() ? jg["class"]["coords"] : jg["class"];
      for (const auto& x : cj) c.push_back(io::int_from_json(x));
      return std::pair{modules_of(ls), c};
    };
    bool d1 = false, d2 = false;
    auto [s1, e1] = load(first_path, d1);
    auto [s2, e2] = load(second_path, d2);
    if (d1 != d2) throw InputError("cannot compare a lattice base with a colattice base");
    Classification c = classify(s1, e1, s2, e2, d1);
    emit(ctx, io::to_json(c),
         c.isomorphic ? "isomorphic via " + to_string(c.psi) : std::string("not isomorphic"));
  });

  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  verify->add_option("--max-m", max_m, "largest tube position")->default_val(3);
  verify->add_option("--degrees", degrees, "cohomological degrees")->default_val("1..4");
  verify->add_option("--only", only, "criterion ids");
  verify->add_flag("--serial", serial, "no threads");
  on(verify, [&] {
    suite::Options opt;
    opt.seed = ctx.seed;
    opt.max_m = max_m;
    auto ds = parse_degrees(degrees);
    opt.min_degree = *std::min_element(ds.begin(), ds.end());
    opt.max_degree = *std::max_element(ds.begin(), ds.end());
    opt.only = only;
    opt.parallel = !serial;
    auto results = suite::run(opt);
    json jr = json::array();
    std::string text;
    bool all = true;
    for (const auto& r : results) {
      all = all && r.pass;
      jr.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
      text += suite::line(r) + "\n";
    }
    emit(ctx, jr, text);
    if (!all) throw VerificationFailed{};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
  } catch (const VerificationFailed&) {
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
