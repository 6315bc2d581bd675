#include "pliml/pliml.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "pliml/catalog.hpp"
#include "pliml/certificate.hpp"
#include "pliml/error.hpp"
#include "pliml/report.hpp"

struct pliml_map {
  pliml::PLMap value;
};

struct pliml_orbit {
  pliml::BackwardOrbit value;
};

namespace {

thread_local std::string last_error;

pliml_status record(pliml_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
pliml_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return PLIML_OK;
  } catch (const pliml::Error& e) {
    return record(static_cast<pliml_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(PLIML_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(PLIML_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) pliml::fail(pliml::ErrorCode::invalid_argument, std::string(what) + " is NULL");
}

pliml::Limits limits_for(size_t budget) {
  pliml::Limits limits;
  if (budget != 0) limits.breakpoint_budget = budget;
  return limits;
}

pliml::CertifyOptions certify_options(const pliml_certify_options* o) {
  pliml::CertifyOptions options;
  if (!o) return options;
  if (o->stages != 0) options.stages = o->stages;
  if (o->jobs != 0) options.jobs = o->jobs;
  options.limits = limits_for(o->breakpoint_budget);
  options.stabilization.limits = options.limits;
  return options;
}

std::string summarize(const pliml::Certificate& c) {
  std::ostringstream out;
  out << "pipeline: " << pliml::to_string(c.pipeline) << "\n";
  if (c.stabilization) {
    const auto& s = *c.stabilization;
    out << "branch: [" << s.a.str() << ", " << s.b.str() << "]\n";
    out << "epsilon: " << s.epsilon.str() << " (" << pliml::to_string(s.side) << ")\n";
  }
  out << "n_i: " << c.first_index << " + " << c.step << " i\n";
  out << "stages: " << c.stages.size() << ", repeating from stage " << c.repeat_index << " with period "
      << c.repeat_period << "\n";
  out << "result: " << (c.passed ? "pass" : "fail") << "\n";
  if (!c.passed) out << "failure: " << c.failure << "\n";
  return out.str();
}

pliml_status emit_certificate(const pliml::Certificate& c, char** certificate, int* passed, char** summary) {
  *certificate = dup(pliml::certificate_to_json(c));
  if (passed) *passed = c.passed ? 1 : 0;
  if (summary) *summary = dup(summarize(c));
  return PLIML_OK;
}

std::vector<std::string> tokens(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::istringstream in(text);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

extern "C" {

const char* pliml_version(void) { return "1.0.0"; }

const char* pliml_status_name(pliml_status status) {
  if (status == PLIML_OK) return "ok";
  return pliml::to_string(static_cast<pliml::ErrorCode>(status));
}

const char* pliml_last_error(void) { return last_error.c_str(); }

void pliml_string_free(char* s) { std::free(s); }

pliml_status pliml_map_parse(const char* text, pliml_map** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new pliml_map{pliml::parse_map(text)};
  });
}

pliml_status pliml_map_builtin(const char* name, pliml_map** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    auto m = pliml::builtin_map(name);
    if (!m) pliml::fail(pliml::ErrorCode::invalid_argument, std::string("unknown builtin map '") + name + "'");
    *out = new pliml_map{std::move(*m)};
  });
}

pliml_status pliml_builtin_names(char** out) {
  return guarded([&] {
    require(out, "out");
    std::string names;
    for (const auto& n : pliml::builtin_names()) names += n + "\n";
    *out = dup(names);
  });
}

void pliml_map_free(pliml_map* map) { delete map; }

pliml_status pliml_map_compose(const pliml_map* outer, const pliml_map* inner, size_t budget, pliml_map** out) {
  return guarded([&] {
    require(outer, "outer");
    require(inner, "inner");
    require(out, "out");
    *out = new pliml_map{pliml::compose(outer->value, inner->value, limits_for(budget))};
  });
}

pliml_status pliml_map_iterate(const pliml_map* map, unsigned n, size_t budget, pliml_map** out) {
  return guarded([&] {
    require(map, "map");
    require(out, "out");
    *out = new pliml_map{pliml::iterate(map->value, n, limits_for(budget))};
  });
}

pliml_status pliml_map_breakpoint_count(const pliml_map* map, size_t* out) {
  return guarded([&] {
    require(map, "map");
    require(out, "out");
    *out = map->value.size();
  });
}

pliml_status pliml_map_eval(const pliml_map* map, const char* x, char** out) {
  return guarded([&] {
    require(map, "map");
    require(x, "x");
    require(out, "out");
    *out = dup(map->value.eval(pliml::Rational::parse(x)).str());
  });
}

pliml_status pliml_map_to_text(const pliml_map* map, char** out) {
  return guarded([&] {
    require(map, "map");
    require(out, "out");
    *out = dup(pliml::to_text(map->value));
  });
}

pliml_status pliml_analyze(const pliml_map* map, const pliml_analyze_options* options, char** out) {
  return guarded([&] {
    require(map, "map");
    require(out, "out");
    pliml::AnalyzeOptions o;
    if (options) {
      if (options->non_strict) o.zigzag.attainment = pliml::Attainment::non_strict;
      if (options->orbit_budget != 0) o.leo.orbit_budget.max_steps = options->orbit_budget;
      if (options->leo_epsilon) o.leo_epsilon = pliml::Rational::parse(options->leo_epsilon);
    }
    *out = dup(pliml::analyze_report(map->value, o));
  });
}

pliml_status pliml_plot_svg(const pliml_map* map, const pliml_plot_options* options, char** out) {
  return guarded([&] {
    require(map, "map");
    require(out, "out");
    pliml::PlotSpec spec;
    if (options) {
      if (options->width != 0) spec.width = options->width;
      if (options->height != 0) spec.height = options->height;
      for (const auto& t : tokens(options->guides)) spec.guides.push_back(pliml::Rational::parse(t));
      for (const auto& t : tokens(options->marks)) {
        const auto comma = t.find(',');
        if (comma == std::string::npos) pliml::fail(pliml::ErrorCode::parse, "mark '" + t + "' is not x,y");
        spec.marks.push_back({pliml::Rational::parse(t.substr(0, comma)), pliml::Rational::parse(t.substr(comma + 1))});
      }
      spec.diagonal = options->diagonal != 0;
    }
    *out = dup(pliml::render_svg(map->value, spec));
  });
}

pliml_status pliml_plot_csv(const pliml_map* map, char** out) {
  return guarded([&] {
    require(map, "map");
    require(out, "out");
    *out = dup(pliml::render_csv(map->value));
  });
}

pliml_status pliml_orbit_parse(const char* text, pliml_orbit** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new pliml_orbit{pliml::BackwardOrbit::parse(text)};
  });
}

void pliml_orbit_free(pliml_orbit* orbit) { delete orbit; }

pliml_status pliml_certify_minc(const pliml_orbit* orbit, const pliml_certify_options* options, char** certificate,
                                int* passed, char** summary) {
  return guarded([&] {
    require(orbit, "orbit");
    require(certificate, "certificate");
    emit_certificate(pliml::certify_minc(orbit->value, certify_options(options)), certificate, passed, summary);
  });
}

pliml_status pliml_certify_general(const pliml_map* map, const pliml_orbit* orbit,
                                   const pliml_certify_options* options, char** certificate, int* passed,
                                   char** summary) {
  return guarded([&] {
    require(map, "map");
    require(orbit, "orbit");
    require(certificate, "certificate");
    emit_certificate(pliml::certify_general(map->value, orbit->value, certify_options(options)), certificate, passed,
                     summary);
  });
}

pliml_status pliml_certificate_verify(const char* certificate, int* consistent, int* passed, char** problems) {
  return guarded([&] {
    require(certificate, "certificate");
    const auto report = pliml::verify_certificate(pliml::certificate_from_json(certificate));
    if (consistent) *consistent = report.consistent ? 1 : 0;
    if (passed) *passed = report.passed ? 1 : 0;
    if (problems) {
      std::string text;
      for (const auto& p : report.problems) text += p + "\n";
      *problems = dup(text);
    }
  });
}

}  // extern "C"
