#include "rgit/cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "rgit/chambers/chambers.hpp"
#include "rgit/common/errors.hpp"
#include "rgit/polygons/polygons.hpp"
#include "rgit/relgit/relgit.hpp"

namespace rgit::cli {

using geom::QMat;
using geom::QVec;
using geom::Rat;
using stability::SetPartition;
using stability::StabilityClass;
using stability::StabilityVerdict;
using stability::WeightVector;

namespace {

// ---- input -----------------------------------------------------------------

class Fields {
 public:
  Fields(const Json& input, std::initializer_list<const char*> allowed) : in_(input) {
    if (!in_.is_object()) throw InputError("input must be a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : in_.items()) {
      if (!ok.count(key)) throw InputError("unknown field '" + key + "'");
    }
  }

  bool has(const char* key) const { return in_.contains(key) && !in_.at(key).is_null(); }
  const Json& req(const char* key) const {
    if (!has(key)) throw InputError(std::string("missing field '") + key + "'");
    return in_.at(key);
  }

 private:
  const Json& in_;
};

Rat rat(const Json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw InputError("expected a rational as \"p/q\" or an integer");
}

QVec vec(const Json& j) {
  if (j.is_string()) return QVec::parse_list(j.get<std::string>());
  if (!j.is_array()) throw InputError("expected a list of rationals");
  QVec out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out[i] = rat(j[i]);
  return out;
}

long integer(const Json& j) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_string()) {
    Rat r = Rat::parse(j.get<std::string>());
    if (r.is_integer() && r.num().fits_slong_p()) return r.num().get_si();
  }
  throw InputError("expected an integer");
}

int small_int(const Json& j, int lo, int hi, const char* what) {
  const long v = integer(j);
  if (v < lo || v > hi) throw InputError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

bool flag(const Json& j) {
  if (!j.is_boolean()) throw InputError("expected true or false");
  return j.get<bool>();
}

QMat matrix(const Json& j) {
  const Json doc = j.is_string() ? Json::parse(j.get<std::string>()) : j;
  if (!doc.is_array() || doc.empty()) throw InputError("matrix must be a nonempty list of rows");
  QMat out;
  for (const auto& row : doc) out.push_back(vec(row));
  for (const auto& row : out) {
    if (row.dim() != out.front().dim()) throw InputError("matrix rows differ in length");
  }
  return out;
}

SetPartition partition(const Json& j, int m) {
  SetPartition p = SetPartition::discrete(1);
  if (j.is_string()) {
    p = SetPartition::parse(j.get<std::string>());
  } else if (j.is_array()) {
    std::vector<moment::Subset> blocks;
    for (const auto& b : j) {
      if (!b.is_array()) throw InputError("partition blocks must be lists of indices");
      moment::Subset s;
      for (const auto& x : b) s.push_back(small_int(x, 1, m, "partition index") - 1);
      blocks.push_back(s);
    }
    p = SetPartition::from_blocks(m, blocks);
  } else {
    throw InputError("partition must be a string like \"12|3|4\" or a list of blocks");
  }
  if (p.m() != m) throw InputError("partition size does not match the weights");
  return p;
}

WeightVector weights(const Fields& f, const char* key = "weights") {
  QVec a = vec(f.req(key));
  if (a.dim() == 0) throw InputError("weights must be nonempty");
  if (f.has("n")) return WeightVector(a, small_int(f.req("n"), 1, 1 << 20, "n"));
  const Rat s = a.sum();
  if (!s.is_integer() || s.sign() <= 0 || !s.num().fits_sint_p()) {
    throw InputError("weights must sum to a positive integer");
  }
  return WeightVector(a, static_cast<int>(s.num().get_si()));
}

// ---- output ----------------------------------------------------------------

Json rat_json(const Rat& r) { return r.str(); }

Json vec_json(const QVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Json subset_json(const moment::Subset& s) {
  Json out = Json::array();
  for (int i : s) out.push_back(i + 1);
  return out;
}

Json wall_json(const chambers::Wall& w) {
  return Json{{"J", subset_json(w.J)}, {"d", w.d}, {"relevant", w.is_relevant}, {"facet", w.is_facet}};
}

Json walls_json(const std::vector<chambers::Wall>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(wall_json(w));
  return out;
}

std::string wall_key(const chambers::Wall& w, int m, int n) {
  return n == 2 ? w.label(m) : w.label(m) + "=" + std::to_string(w.d);
}

Json signature_json(const chambers::ChamberSignature& sig) {
  Json out = Json::object();
  const auto& rel = chambers::relevant_walls(sig.m, sig.n);
  for (std::size_t k = 0; k < rel.size(); ++k) {
    const int s = sig.signs[k];
    out[wall_key(rel[k], sig.m, sig.n)] = s < 0 ? "-" : s > 0 ? "+" : "0";
  }
  return out;
}

Json verdict_json(const StabilityVerdict& v) {
  Json w = Json::array();
  for (const auto& s : v.witnesses) w.push_back(subset_json(s));
  return Json{{"class", std::string(stability::class_name(v.cls))},
              {"sign", v.sign},
              {"sq_magnitude", rat_json(v.sq_magnitude)},
              {"witnesses", w}};
}

Json class_json(StabilityClass c) { return std::string(stability::class_name(c)); }

Json partitions_json(const std::vector<SetPartition>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

// ---- commands --------------------------------------------------------------

Json cmd_classify(const Json& in) {
  Fields f(in, {"weights", "n", "partition", "partitions", "points", "matrix"});
  const WeightVector w = weights(f);
  const int given = f.has("partition") + f.has("partitions") + f.has("points") + f.has("matrix");
  if (given != 1) throw InputError("give exactly one of partition, partitions, points, matrix");
  if (f.has("matrix")) return verdict_json(stability::sln_classify(stability::SLnConfig(matrix(f.req("matrix"))), w));
  if (f.has("points")) {
    std::vector<std::pair<Rat, Rat>> pts;
    for (const auto& p : f.req("points")) {
      if (!p.is_array() || p.size() != 2) throw InputError("points are pairs [a, b]");
      pts.emplace_back(rat(p[0]), rat(p[1]));
    }
    return verdict_json(stability::sl2_classify(stability::ConfigurationP1::from_points(pts), w));
  }
  if (f.has("partition")) {
    return verdict_json(stability::sl2_classify(stability::ConfigurationP1(partition(f.req("partition"), w.m())), w));
  }
  const Json& list = f.req("partitions");
  if (!list.is_array()) throw InputError("partitions must be a list");
  std::vector<stability::ConfigurationP1> cfgs;
  for (const auto& p : list) cfgs.emplace_back(partition(p, w.m()));
  const auto verdicts = stability::classify_all(cfgs, w);
  Json out = Json::array();
  for (std::size_t k = 0; k < cfgs.size(); ++k) {
    Json v = Json{{"partition", cfgs[k].partition().str()}};
    v.update(verdict_json(verdicts[k]));
    out.push_back(v);
  }
  return Json{{"verdicts", out}};
}

Json cmd_walls(const Json& in) {
  Fields f(in, {"m", "n"});
  const int m = small_int(f.req("m"), 2, 12, "m");
  const int n = small_int(f.req("n"), 1, m - 1, "n");
  const auto& ws = chambers::walls(m, n);
  return Json{{"m", m},
              {"n", n},
              {"count", ws.size()},
              {"relevant_count", chambers::relevant_walls(m, n).size()},
              {"walls", walls_json(ws)}};
}

Json cmd_chambers(const Json& in) {
  Fields f(in, {"m", "n", "tables"});
  const int m = small_int(f.req("m"), 3, 7, "m");
  const int n = f.has("n") ? small_int(f.req("n"), 2, 2, "n") : 2;
  const bool tables = f.has("tables") && flag(f.req("tables"));
  const auto cs = chambers::enumerate_chambers(m, n);
  const auto parts = stability::all_set_partitions(m);
  Json list = Json::array();
  for (const auto& c : cs) {
    Json j{{"signature", signature_json(c.signature)}, {"witness", vec_json(c.witness)}};
    if (tables) {
      Json t = Json::object();
      for (std::size_t k = 0; k < parts.size(); ++k) t[parts[k].str()] = class_json(c.table[k]);
      j["table"] = t;
    }
    list.push_back(j);
  }
  return Json{{"m", m}, {"n", n}, {"count", cs.size()}, {"chambers", list}};
}

Json cmd_locate(const Json& in) {
  Fields f(in, {"weights", "n"});
  const auto loc = chambers::locate(weights(f));
  return Json{{"signature", signature_json(loc.signature)},
              {"open", loc.signature.open() && loc.on_boundary_walls.empty()},
              {"on_walls", walls_json(loc.on_walls)},
              {"on_boundary_walls", walls_json(loc.on_boundary_walls)}};
}

Json cmd_gm_check(const Json& in) {
  Fields f(in, {"weights", "n", "matrix", "partition"});
  const WeightVector w = weights(f);
  if (f.has("matrix") == f.has("partition")) throw InputError("give exactly one of matrix, partition");
  const QMat mat =
      f.has("matrix") ? matrix(f.req("matrix")) : stability::ConfigurationP1(partition(f.req("partition"), w.m())).matrix();
  const stability::SLnConfig cfg(mat);
  const auto sln = stability::sln_classify(cfg, w);
  const auto poly = moment::matroid_polytope(moment::plucker(mat));
  const auto torus = stability::torus_classify(poly, w.alpha(), w.m() - 1);
  return Json{{"agree", sln.cls == torus.cls}, {"sln", verdict_json(sln)}, {"torus", verdict_json(torus)}};
}

Json cmd_relative(const Json& in) {
  if (!in.is_object() || !in.contains("instance") || !in.at("instance").is_string()) {
    throw InputError("relative needs \"instance\": forgetful, facet or pair");
  }
  const std::string kind = in.at("instance").get<std::string>();
  if (kind == "forgetful") {
    Fields f(in, {"instance", "m", "index", "weights", "eps"});
    const int m = small_int(f.req("m"), 4, 12, "m");
    const int i = small_int(f.req("index"), 1, m, "index") - 1;
    const auto rep = relgit::forgetful_instance(m, i, WeightVector(vec(f.req("weights")), 2), rat(f.req("eps")));
    return Json{{"instance", kind},
                {"m", m},
                {"index", i + 1},
                {"eps", rat_json(rep.eps)},
                {"threshold", rat_json(rep.threshold)},
                {"lifted", vec_json(rep.lifted.alpha())},
                {"equality_verified", rep.equality_verified},
                {"semistable", partitions_json(rep.semistable)},
                {"stable", partitions_json(rep.stable)},
                {"preimage", partitions_json(rep.preimage)},
                {"violated_walls", walls_json(rep.violated_walls)}};
  }
  if (kind == "facet") {
    Fields f(in, {"instance", "m", "index", "weights"});
    const int m = small_int(f.req("m"), 3, 12, "m");
    const int i = small_int(f.req("index"), 1, m, "index") - 1;
    const auto rep = relgit::facet_instance(m, i, WeightVector(vec(f.req("weights")), 2));
    Json t = Json::object();
    for (std::size_t k = 0; k < rep.partitions.size(); ++k) t[rep.partitions[k].str()] = class_json(rep.table[k]);
    return Json{{"instance", kind},
                {"m", m},
                {"index", i + 1},
                {"coincident_unstable", rep.coincident_unstable},
                {"no_stable", rep.no_stable},
                {"table", t}};
  }
  if (kind == "pair") {
    Fields f(in, {"instance", "index", "weights", "mu", "linearization"});
    const WeightVector alpha(vec(f.req("weights")), 2);
    const int m = alpha.m() + 1;
    const int i = small_int(f.req("index"), 1, m, "index") - 1;
    const Rat mu = f.has("mu") ? rat(f.req("mu")) : Rat(1);
    const Json& lin = f.req("linearization");
    if (!lin.is_object() || !lin.contains("mode")) throw InputError("linearization needs a mode");
    relgit::PairLinearization pl{relgit::Limit{}};
    const std::string mode = lin.at("mode").get<std::string>();
    if (mode == "finite") {
      Fields lf(lin, {"mode", "n"});
      pl.mode = relgit::Finite{integer(lf.req("n"))};
    } else if (mode == "limit") {
      Fields lf(lin, {"mode"});
    } else {
      throw InputError("mode must be finite or limit");
    }
    const auto model = relgit::forgetful_model(alpha, i, mu);
    const auto v = relgit::relative_classify(model, pl);
    const auto parts = stability::all_set_partitions(m);
    Json points = Json::array();
    for (std::size_t y = 0; y < parts.size(); ++y) {
      const auto& p = v.points[y];
      points.push_back(Json{{"partition", parts[y].str()},
                            {"class", p.cls ? class_json(*p.cls) : Json(nullptr)},
                            {"fiber_class", class_json(p.fiber_class)},
                            {"base_class", class_json(p.base_class)}});
    }
    auto names = [&](const std::vector<int>& idx) {
      Json out = Json::array();
      for (int y : idx) out.push_back(parts[static_cast<std::size_t>(y)].str());
      return out;
    };
    const char* contract = v.contract == relgit::Contract::Equality        ? "equality"
                           : v.contract == relgit::Contract::InclusionOnly ? "inclusion_only"
                                                                           : "limit";
    return Json{{"instance", kind},
                {"m", m},
                {"index", i + 1},
                {"linearization", lin},
                {"contract", contract},
                {"stable_from", v.stable_from ? Json(*v.stable_from) : Json(nullptr)},
                {"semistable", names(v.semistable())},
                {"stable", names(v.stable())},
                {"undetermined", names(v.undetermined())},
                {"points", points}};
  }
  throw InputError("unknown relative instance '" + kind + "'");
}

Json polygon_json(const polygons::PolygonReport& r) {
  return Json{{"exists", r.exists},
              {"degenerate", r.degenerate},
              {"alpha", vec_json(r.alpha.alpha())},
              {"chamber", r.chamber ? signature_json(*r.chamber) : Json(nullptr)},
              {"on_walls", walls_json(r.on_walls)},
              {"moduli_dim", r.moduli_dim ? Json(*r.moduli_dim) : Json(nullptr)}};
}

Json cmd_polygon(const Json& in) {
  if (!in.is_object() || !in.contains("action") || !in.at("action").is_string()) {
    throw InputError("polygon needs \"action\": analyze or path");
  }
  const std::string action = in.at("action").get<std::string>();
  if (action == "analyze") {
    Fields f(in, {"action", "sides"});
    return polygon_json(polygons::analyze(polygons::SideLengths(vec(f.req("sides")))));
  }
  if (action == "path") {
    Fields f(in, {"action", "from", "to"});
    const auto path = polygons::wall_crossing_path(polygons::SideLengths(vec(f.req("from"))),
                                                   polygons::SideLengths(vec(f.req("to"))));
    Json list = Json::array();
    for (const auto& c : path) {
      list.push_back(Json{{"t", rat_json(c.t)},
                          {"walls", walls_json(c.walls)},
                          {"before", signature_json(c.before)},
                          {"after", signature_json(c.after)}});
    }
    return Json{{"crossings", list}};
  }
  throw InputError("unknown polygon action '" + action + "'");
}

std::string cmd_render(const Json& in) {
  Fields f(in, {"point", "u", "v"});
  const QVec point = f.has("point") ? vec(f.req("point")) : QVec::constant(4, Rat(1, 2));
  return render_slice(point, vec(f.req("u")), vec(f.req("v")));
}

Json error_json(std::string_view name, const std::string& message) {
  return Json{{"error", std::string(name)}, {"message", message}};
}

}  // namespace

std::string Artifact::text() const { return is_svg ? svg : json.dump(2) + "\n"; }

Artifact execute(const std::string& command, const Json& input) {
  Artifact a;
  if (command == "classify") a.json = cmd_classify(input);
  else if (command == "walls") a.json = cmd_walls(input);
  else if (command == "chambers") a.json = cmd_chambers(input);
  else if (command == "locate") a.json = cmd_locate(input);
  else if (command == "gm-check") a.json = cmd_gm_check(input);
  else if (command == "relative") a.json = cmd_relative(input);
  else if (command == "polygon") a.json = cmd_polygon(input);
  else if (command == "render") {
    a.is_svg = true;
    a.svg = cmd_render(input);
  } else {
    throw InputError("unknown command '" + command + "'");
  }
  return a;
}

Artifact execute_job(const Json& job, std::string* output_path) {
  Fields f(job, {"command", "input", "output"});
  const Json& cmd = f.req("command");
  if (!cmd.is_string()) throw InputError("command must be a string");
  if (f.has("output")) {
    if (!job.at("output").is_string()) throw InputError("output must be a path string");
    if (output_path) *output_path = job.at("output").get<std::string>();
  }
  return execute(cmd.get<std::string>(), f.has("input") ? job.at("input") : Json::object());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GIT stability, walls and chambers, relative GIT and polygon spaces", "rgit"};
  app.require_subcommand(1);
  std::string output;

  std::string command;
  Json input = Json::object();
  std::map<std::string, std::string> text;
  std::map<std::string, long> ints;
  bool tables = false;
  std::string job_path;

  auto add = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, text[name], help);
  };
  auto add_int = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, ints[name], help);
  };
  auto with_output = [&](CLI::App* sub) { sub->add_option("-o,--output", output, "Write the artifact to this file"); };

  auto* classify = app.add_subcommand("classify", "Stability class of a configuration");
  add(classify, "weights", "Linearization, e.g. 1/2,1/2,1/2,1/2");
  add_int(classify, "n", "Weight sum (default: sum of the weights)");
  add(classify, "partition", "Coincidence pattern on P^1, e.g. \"12|3|4\"");
  add(classify, "matrix", "Configuration matrix as JSON rows");
  auto* walls = app.add_subcommand("walls", "Walls of the hypersimplex Delta^m_n");
  add_int(walls, "m", "Number of points");
  add_int(walls, "n", "Weight sum");
  auto* chambers_cmd = app.add_subcommand("chambers", "Open chambers of Delta^m_2");
  add_int(chambers_cmd, "m", "Number of points (3..7)");
  add_int(chambers_cmd, "n", "Weight sum (2)");
  chambers_cmd->add_flag("--tables", tables, "Include classification tables");
  auto* locate = app.add_subcommand("locate", "Chamber signature of a linearization");
  add(locate, "weights", "Linearization");
  add_int(locate, "n", "Weight sum");
  auto* gm = app.add_subcommand("gm-check", "Compare the SL(n) and torus classifications");
  add(gm, "weights", "Linearization");
  add_int(gm, "n", "Weight sum");
  add(gm, "matrix", "Configuration matrix as JSON rows");
  add(gm, "partition", "Coincidence pattern on P^1");

  auto* relative = app.add_subcommand("relative", "Relative GIT on forgetful and facet maps");
  relative->require_subcommand(1);
  auto* forgetful = relative->add_subcommand("forgetful", "Forgetful map f_i at alpha~_eps");
  add_int(forgetful, "m", "Number of points upstairs");
  add_int(forgetful, "index", "Forgotten point (1-based)");
  add(forgetful, "weights", "Base weights (m-1 entries)");
  add(forgetful, "eps", "Deformation parameter");
  auto* facet = relative->add_subcommand("facet", "Facet weight with alpha_i = 1");
  add_int(facet, "m", "Number of points");
  add_int(facet, "index", "Facet index (1-based)");
  add(facet, "weights", "Weights (m entries)");
  auto* pair = relative->add_subcommand("pair", "Pair linearization on the forgetful model");
  add_int(pair, "index", "Forgotten point (1-based)");
  add(pair, "weights", "Base weights");
  add(pair, "mu", "Fiber degree (default 1)");
  add(pair, "mode", "finite or limit");
  add_int(pair, "n", "Power of the base linearization (finite mode)");

  auto* polygon = app.add_subcommand("polygon", "Spatial polygon spaces");
  polygon->require_subcommand(1);
  auto* analyze = polygon->add_subcommand("analyze", "Existence, degeneracy and chamber of side lengths");
  add(analyze, "sides", "Side lengths, e.g. 2,1,1,1");
  auto* path = polygon->add_subcommand("path", "Walls crossed by a deformation of side lengths");
  add(path, "from", "Start side lengths");
  add(path, "to", "End side lengths");

  auto* render = app.add_subcommand("render", "SVG of a plane slice of Delta^4_2");
  add(render, "point", "Point on the plane (default 1/2,1/2,1/2,1/2)");
  add(render, "u", "First direction (coordinate sum 0)");
  add(render, "v", "Second direction (coordinate sum 0)");

  auto* job = app.add_subcommand("run", "Execute a JSON job file");
  job->add_option("--job", job_path, "Job file, or - for standard input")->required();

  for (auto* sub : {classify, walls, chambers_cmd, locate, gm, forgetful, facet, pair, analyze, path, render, job}) {
    with_output(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << error_json("InputError", e.what()).dump() << "\n";
    return 1;
  }

  auto collect = [&](CLI::App* sub, std::initializer_list<const char*> strings, std::initializer_list<const char*> numbers) {
    for (const char* k : strings) {
      if (sub->count(std::string("--") + k)) input[k] = text[k];
    }
    for (const char* k : numbers) {
      if (sub->count(std::string("--") + k)) input[k] = ints[k];
    }
  };

  try {
    Artifact result;
    if (job->parsed()) {
      Json doc;
      if (job_path == "-") {
        doc = Json::parse(std::cin);
      } else {
        std::ifstream file(job_path);
        if (!file) throw InputError("cannot read job file " + job_path);
        doc = Json::parse(file);
      }
      std::string job_output;
      result = execute_job(doc, &job_output);
      if (output.empty()) output = job_output;
    } else if (classify->parsed()) {
      collect(classify, {"weights", "partition", "matrix"}, {"n"});
      result = execute("classify", input);
    } else if (walls->parsed()) {
      collect(walls, {}, {"m", "n"});
      result = execute("walls", input);
    } else if (chambers_cmd->parsed()) {
      collect(chambers_cmd, {}, {"m", "n"});
      if (tables) input["tables"] = true;
      result = execute("chambers", input);
    } else if (locate->parsed()) {
      collect(locate, {"weights"}, {"n"});
      result = execute("locate", input);
    } else if (gm->parsed()) {
      collect(gm, {"weights", "matrix", "partition"}, {"n"});
      result = execute("gm-check", input);
    } else if (relative->parsed()) {
      if (forgetful->parsed()) {
        input["instance"] = "forgetful";
        collect(forgetful, {"weights", "eps"}, {"m", "index"});
      } else if (facet->parsed()) {
        input["instance"] = "facet";
        collect(facet, {"weights"}, {"m", "index"});
      } else {
        input["instance"] = "pair";
        collect(pair, {"weights", "mu"}, {"index"});
        Json lin{{"mode", pair->count("--mode") ? text["mode"] : std::string("limit")}};
        if (pair->count("--n")) lin["n"] = ints["n"];
        input["linearization"] = lin;
      }
      result = execute("relative", input);
    } else if (polygon->parsed()) {
      if (analyze->parsed()) {
        input["action"] = "analyze";
        collect(analyze, {"sides"}, {});
      } else {
        input["action"] = "path";
        collect(path, {"from", "to"}, {});
      }
      result = execute("polygon", input);
    } else {
      collect(render, {"point", "u", "v"}, {});
      result = execute("render", input);
    }

    if (output.empty()) {
      out << result.text();
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw InputError("cannot write " + output);
      file << result.text();
    }
    return 0;
  } catch (const DomainError& e) {
    out << error_json(e.name(), e.what()).dump(2) << "\n";
    return 2;
  } catch (const InputError& e) {
    err << error_json("InputError", e.what()).dump() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << error_json("InputError", e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what()).dump() << "\n";
    return 1;
  }
}

}  // namespace rgit::cli
