#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rgit/exactgeom/rational.hpp"

namespace rgit::cli {

using Json = nlohmann::ordered_json;

/// Output of one command: a JSON document or an SVG text.
struct Artifact {
  bool is_svg = false;
  Json json;
  std::string svg;

  std::string text() const;
};

/// Executes `command` with its input object. Unknown input fields are rejected.
/// Throws InputError or DomainError.
Artifact execute(const std::string& command, const Json& input);

/// Parses a job document {"command": ..., "input": {...}, "output": path?} and executes it.
Artifact execute_job(const Json& job, std::string* output_path = nullptr);

/// Full command line (argv[0] excluded). Exit 0 on success, 2 on domain errors
/// (error JSON on `out`), 1 on malformed input (error JSON on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// SVG of the plane point + s u + t v through Delta^4_2 with its wall traces
/// and chamber labels. Throws DomainError(DegenerateSlice).
std::string render_slice(const geom::QVec& point, const geom::QVec& u, const geom::QVec& v);

}  // namespace rgit::cli
