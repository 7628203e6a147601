// extern "C" layer over the engine; every exception stops here.

#include "ioident/ioident.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "ioident/report.hpp"

struct ioident_model {
  ioident::Model model;
};

struct ioident_report {
  ioident::AnalysisReport report;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0;
thread_local int last_column = 0;

ioident_status fail(ioident_status code, const std::string& msg, int line = 0, int column = 0) {
  last_error = msg;
  last_line = line;
  last_column = column;
  return code;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
ioident_status guarded(F&& body) {
  try {
    last_error.clear();
    last_line = last_column = 0;
    return body();
  } catch (const ioident::ParseError& e) {
    return fail(IOIDENT_ERR_PARSE, e.what(), e.line(), e.column());
  } catch (const ioident::UnsupportedFunctionError& e) {
    return fail(IOIDENT_ERR_UNSUPPORTED, e.what());
  } catch (const ioident::ArityError& e) {
    return fail(IOIDENT_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(IOIDENT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IOIDENT_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* ioident_version(void) { return "0.1.0"; }

const char* ioident_last_error(void) { return last_error.c_str(); }
int ioident_last_error_line(void) { return last_line; }
int ioident_last_error_column(void) { return last_column; }

void ioident_options_init(ioident_options* opts) {
  if (!opts) return;
  opts->seed = 0;
  opts->depth = -1;
  opts->series_order = 0;
  opts->trials = 5;
  opts->first_integral_degree = 3;
}

ioident_status ioident_model_parse(const char* text, ioident_model** out) {
  if (!text || !out) return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new ioident_model{ioident::parse_model(text)};
    return IOIDENT_OK;
  });
}

ioident_status ioident_model_load(const char* path, ioident_model** out) {
  if (!path || !out) return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(IOIDENT_ERR_IO, std::string("cannot read ") + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return fail(IOIDENT_ERR_IO, std::string("cannot read ") + path);
  std::string text = buf.str();
  return ioident_model_parse(text.c_str(), out);
}

void ioident_model_free(ioident_model* model) { delete model; }

ioident_status ioident_model_to_string(const ioident_model* model, char** out) {
  if (!model || !out) return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(ioident::to_string(model->model));
    return IOIDENT_OK;
  });
}

ioident_status ioident_model_denominator(const ioident_model* model, char** out) {
  if (!model || !out) return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(ioident::to_string(model->model.Q));
    return IOIDENT_OK;
  });
}

ioident_status ioident_model_extend(const ioident_model* model, const char* function, ioident_model** out) {
  if (!model || !function || !out) return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto& m = model->model;
    ioident::RatFun h = ioident::parse_rational(function, m.ring);
    *out = new ioident_model{ioident::extend_model_for_function(m, h)};
    return IOIDENT_OK;
  });
}

ioident_status ioident_analyze(const ioident_model* model, const ioident_options* opts,
                               const char* const* check_functions, size_t n_check, ioident_report** out) {
  if (!model || !out || (n_check && !check_functions)) return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  ioident_options o;
  ioident_options_init(&o);
  if (opts) o = *opts;
  if (o.trials < 1 || o.series_order < 0 || o.first_integral_degree < 0)
    return fail(IOIDENT_ERR_ARGUMENT, "invalid option value");
  return guarded([&] {
    ioident::AnalysisSettings s;
    s.seed = o.seed;
    if (o.depth >= 0) s.depth = static_cast<std::size_t>(o.depth);
    s.series_order = static_cast<std::size_t>(o.series_order);
    s.trials = static_cast<std::size_t>(o.trials);
    s.first_integral_degree = static_cast<std::size_t>(o.first_integral_degree);
    for (size_t i = 0; i < n_check; ++i) {
      if (!check_functions[i]) return fail(IOIDENT_ERR_ARGUMENT, "null check function");
      s.check_functions.emplace_back(check_functions[i]);
    }
    auto rep = std::make_unique<ioident_report>(ioident_report{ioident::analyze(model->model, s)});
    bool complete = rep->report.complete;
    *out = rep.release();
    if (!complete) return fail(IOIDENT_ERR_DEPTH, (*out)->report.error);
    return IOIDENT_OK;
  });
}

ioident_status ioident_report_render(const ioident_report* report, ioident_format format, char** out) {
  if (!report || !out) return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto f = format == IOIDENT_FORMAT_JSON ? ioident::ReportFormat::Json : ioident::ReportFormat::Text;
    *out = copy_string(ioident::emit_report(report->report, f));
    return IOIDENT_OK;
  });
}

int ioident_report_complete(const ioident_report* report) { return report && report->report.complete ? 1 : 0; }

void ioident_report_free(ioident_report* report) { delete report; }

ioident_status ioident_field_membership(const ioident_model* model, const char* function,
                                        const char* const* generators, size_t n_generators, int* result) {
  if (!model || !function || !result || (n_generators && !generators))
    return fail(IOIDENT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& ring = model->model.param_ring;
    std::vector<ioident::RatFun> gens;
    for (size_t i = 0; i < n_generators; ++i) gens.push_back(ioident::parse_rational(generators[i], ring));
    *result = ioident::field_membership(ioident::parse_rational(function, ring), gens) ? 1 : 0;
    return IOIDENT_OK;
  });
}

void ioident_string_free(char* s) { std::free(s); }

}  // extern "C"
