#include "lfv.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/report.hpp"
#include "core/suites.hpp"

struct lfv_config {
  lfv::RunConfig cfg;
};

struct lfv_report {
  lfv::RunConfig cfg;  // frozen copy, so rendering matches the run exactly
  std::vector<lfv::VerificationReport> reports;
};

namespace {

thread_local std::string g_last_error;

lfv_status fail(lfv_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

template <typename F>
lfv_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LFV_OK;
  } catch (const lfv::ParseError& e) {
    return fail(LFV_EPARSE, e.what());
  } catch (const lfv::ValidationError& e) {
    return fail(LFV_EINVALID, e.what());
  } catch (const lfv::UnknownModel& e) {
    return fail(LFV_EINVALID, e.what());
  } catch (const lfv::IoError& e) {
    return fail(LFV_EIO, e.what());
  } catch (const std::exception& e) {
    return fail(LFV_ERUNTIME, e.what());
  }
}

char* copy_to_c(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* lfv_version(void) { return lfv::kVersion; }

const char* lfv_last_error(void) { return g_last_error.c_str(); }

lfv_status lfv_config_parse(const char* json_text, lfv_config** out) {
  if (!json_text || !out) return fail(LFV_EINVALID, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new lfv_config{lfv::parse_config(json_text)}; });
}

lfv_status lfv_config_load(const char* path, lfv_config** out) {
  if (!path || !out) return fail(LFV_EINVALID, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new lfv_config{lfv::load_config(path)}; });
}

void lfv_config_set_seed(lfv_config* cfg, uint64_t seed) {
  if (cfg) cfg->cfg.seed = seed;
}

lfv_status lfv_config_select_suites(lfv_config* cfg, const char* const* names,
                                    size_t count) {
  if (!cfg || (!names && count > 0)) return fail(LFV_EINVALID, "null argument");
  return guarded([&] {
    std::vector<std::string> suites;
    suites.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!names[i]) throw lfv::ValidationError("null suite name");
      suites.emplace_back(names[i]);
    }
    lfv::RunConfig candidate = cfg->cfg;
    candidate.suites = std::move(suites);
    candidate.validate();  // rejects unknown names before committing
    cfg->cfg = std::move(candidate);
  });
}

lfv_status lfv_config_scale_tolerances(lfv_config* cfg, double factor) {
  if (!cfg) return fail(LFV_EINVALID, "null argument");
  return guarded([&] {
    if (!(factor > 0.0)) throw lfv::ValidationError("tolerance factor must be positive");
    cfg->cfg.tol_scale *= factor;
  });
}

void lfv_config_free(lfv_config* cfg) { delete cfg; }

lfv_status lfv_run(const lfv_config* cfg, lfv_report** out) {
  if (!cfg || !out) return fail(LFV_EINVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto rep = std::make_unique<lfv_report>();
    rep->cfg = cfg->cfg;
    rep->reports = lfv::run_suites(cfg->cfg);
    *out = rep.release();
  });
}

int lfv_report_all_passed(const lfv_report* rep) {
  return rep && lfv::all_passed(rep->reports) ? 1 : 0;
}

lfv_status lfv_report_render(const lfv_report* rep, const char* format, char** out) {
  if (!rep || !format || !out) return fail(LFV_EINVALID, "null argument");
  *out = nullptr;
  lfv::ReportFormat fmt;
  if (std::strcmp(format, "json") == 0) {
    fmt = lfv::ReportFormat::Json;
  } else if (std::strcmp(format, "markdown") == 0) {
    fmt = lfv::ReportFormat::Markdown;
  } else {
    return fail(LFV_EINVALID,
                std::string("unknown format \"") + format + "\" (use json or markdown)");
  }
  return guarded([&] {
    const std::string text = lfv::render_report(rep->reports, rep->cfg, fmt);
    *out = copy_to_c(text);
    if (!*out) throw std::bad_alloc();
  });
}

void lfv_string_free(char* text) { std::free(text); }

void lfv_report_free(lfv_report* rep) { delete rep; }

}  // extern "C"
