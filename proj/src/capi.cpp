#include "biphoton/biphoton.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "biphoton/config.hpp"
#include "biphoton/error.hpp"
#include "biphoton/io.hpp"
#include "biphoton/oracle.hpp"
#include "biphoton/presets.hpp"
#include "biphoton/scan.hpp"
#include "biphoton/verify.hpp"

struct bph_config {
  biphoton::ExperimentConfig value;
};

struct bph_scan {
  biphoton::ScanResult result;
  double oracle_max_rel_delta = 0.0;
  std::size_t grid_n = 0;
};

struct bph_sweep {
  std::vector<biphoton::SweepRow> rows;
};

struct bph_report {
  biphoton::VerifyReport report;
};

namespace {

thread_local std::string last_error;

bph_status status_of(biphoton::ErrorKind kind) {
  using biphoton::ErrorKind;
  switch (kind) {
    case ErrorKind::domain: return BPH_ERR_DOMAIN;
    case ErrorKind::config: return BPH_ERR_CONFIG;
    case ErrorKind::lookup: return BPH_ERR_LOOKUP;
    case ErrorKind::contract: return BPH_ERR_CONTRACT;
    case ErrorKind::unsupported: return BPH_ERR_UNSUPPORTED;
    case ErrorKind::io: return BPH_ERR_IO;
  }
  return BPH_ERR_INTERNAL;
}

struct ArgumentError {
  const char* what;
};

template <typename Fn>
bph_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return BPH_OK;
  } catch (const biphoton::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const ArgumentError& e) {
    last_error = e.what;
    return BPH_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BPH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BPH_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return BPH_ERR_INTERNAL;
  }
}

template <typename T>
T& need(T* p, const char* what) {
  if (!p) throw ArgumentError{what};
  return *p;
}

const char* need_text(const char* p, const char* what) {
  if (!p) throw ArgumentError{what};
  return p;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

biphoton::ScanOptions scan_options(const bph_scan_options* o) {
  biphoton::ScanOptions out;
  if (!o) return out;
  out.wing_factor = o->wing_factor;
  out.flat_threshold = o->flat_threshold;
  out.estimator = o->michelson ? biphoton::VisibilityEstimator::michelson
                               : biphoton::VisibilityEstimator::baseline_referenced;
  out.threads = o->threads;
  return out;
}

bph_kind kind_of(biphoton::ScanKind k) {
  switch (k) {
    case biphoton::ScanKind::dip: return BPH_KIND_DIP;
    case biphoton::ScanKind::peak: return BPH_KIND_PEAK;
    case biphoton::ScanKind::flat: break;
  }
  return BPH_KIND_FLAT;
}

template <typename Handle, typename Make>
bph_status make_handle(Handle** out, Make&& make) {
  return guarded([&] {
    need(out, "null output pointer");
    *out = nullptr;
    *out = new Handle{make()};
  });
}

}  // namespace

extern "C" {

const char* bph_last_error(void) { return last_error.c_str(); }

const char* bph_status_name(bph_status status) {
  switch (status) {
    case BPH_OK: return "ok";
    case BPH_ERR_DOMAIN: return "domain error";
    case BPH_ERR_CONFIG: return "configuration error";
    case BPH_ERR_LOOKUP: return "lookup error";
    case BPH_ERR_CONTRACT: return "contract violation";
    case BPH_ERR_UNSUPPORTED: return "unsupported model";
    case BPH_ERR_IO: return "i/o error";
    case BPH_ERR_ARGUMENT: return "invalid argument";
    case BPH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bph_kind_name(bph_kind kind) {
  switch (kind) {
    case BPH_KIND_DIP: return "dip";
    case BPH_KIND_PEAK: return "peak";
    case BPH_KIND_FLAT: return "flat";
  }
  return "unknown";
}

void bph_string_free(char* text) { std::free(text); }

size_t bph_preset_count(void) { return biphoton::preset_names().size(); }

const char* bph_preset_name(size_t index) {
  const auto& names = biphoton::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

bph_status bph_config_new(bph_config** out) {
  return make_handle(out, [] { return biphoton::ExperimentConfig{}; });
}

bph_status bph_config_from_preset(const char* name, bph_config** out) {
  return make_handle(out, [&] { return biphoton::preset(need_text(name, "null preset name")); });
}

bph_status bph_config_from_file(const char* path, bph_config** out) {
  return make_handle(out, [&] { return biphoton::load_config(std::string(need_text(path, "null path"))); });
}

bph_status bph_config_from_string(const char* text, const bph_config* base, bph_config** out) {
  return make_handle(out, [&] {
    return biphoton::parse_config(std::string_view(need_text(text, "null text")),
                                  base ? base->value : biphoton::ExperimentConfig{});
  });
}

bph_status bph_config_clone(const bph_config* config, bph_config** out) {
  return make_handle(out, [&] { return need(config, "null config").value; });
}

void bph_config_free(bph_config* config) { delete config; }

bph_status bph_config_set(bph_config* config, const char* key, const char* value) {
  return guarded([&] {
    biphoton::ExperimentConfig updated = need(config, "null config").value;
    biphoton::set_parameter(updated, need_text(key, "null key"), need_text(value, "null value"));
    config->value = updated;
  });
}

bph_status bph_config_set_number(bph_config* config, const char* key, double value) {
  return guarded([&] {
    biphoton::ExperimentConfig updated = need(config, "null config").value;
    biphoton::set_numeric_parameter(updated, need_text(key, "null key"), value);
    config->value = updated;
  });
}

bph_status bph_config_get_number(const bph_config* config, const char* key, double* out) {
  return guarded([&] {
    need(out, "null output pointer") =
        biphoton::get_numeric_parameter(need(config, "null config").value, need_text(key, "null key"));
  });
}

bph_status bph_config_force_grid(bph_config* config, size_t n) {
  return guarded([&] {
    need(config, "null config").value.grid.n = n;
    config->value.grid.auto_refine = false;
  });
}

bph_status bph_config_to_text(const bph_config* config, char** out) {
  return guarded([&] {
    need(out, "null output pointer") =
        duplicate(biphoton::to_config_text(need(config, "null config").value));
  });
}

bph_status bph_config_grid_size(const bph_config* config, size_t* out) {
  return guarded([&] {
    const auto& c = need(config, "null config").value;
    need(out, "null output pointer") = biphoton::required_grid_n(c.spectral, c.grid);
  });
}

bph_status bph_rate(const bph_config* config, double delay_fs, double* out) {
  return guarded([&] {
    need(out, "null output pointer") =
        biphoton::coincidence_rate(need(config, "null config").value, delay_fs);
  });
}

bph_status bph_oracle_rate(const bph_config* config, double delay_fs, double* out) {
  return guarded([&] {
    need(out, "null output pointer") =
        biphoton::oracle_rate(need(config, "null config").value, delay_fs);
  });
}

bph_status bph_oracle_visibility(const bph_config* config, double* out) {
  return guarded([&] {
    need(out, "null output pointer") = biphoton::oracle_visibility(need(config, "null config").value);
  });
}

bph_status bph_path_overlap(const bph_config* config, double delay_fs, double* re, double* im) {
  return guarded([&] {
    need(re, "null output pointer");
    need(im, "null output pointer");
    const biphoton::CoincidenceEngine engine(need(config, "null config").value);
    const auto paths = engine.paths(delay_fs);
    const biphoton::Complex g = biphoton::path_overlap(paths, engine.jsa(), engine.grid());
    *re = g.real();
    *im = g.imag();
  });
}

bph_status bph_refine_check(const bph_config* config, double delay_fs, double* out) {
  return guarded([&] {
    need(out, "null output pointer") =
        biphoton::refine_check(need(config, "null config").value, delay_fs);
  });
}

void bph_scan_options_default(bph_scan_options* options) {
  if (!options) return;
  const biphoton::ScanOptions d;
  options->wing_factor = d.wing_factor;
  options->flat_threshold = d.flat_threshold;
  options->michelson = 0;
  options->threads = d.threads;
}

bph_status bph_scan_run(const bph_config* config, double d_min, double d_max, size_t steps,
                        const bph_scan_options* options, bph_scan** out) {
  return guarded([&] {
    need(out, "null output pointer");
    *out = nullptr;
    const biphoton::CoincidenceEngine engine(need(config, "null config").value);
    auto scan = std::make_unique<bph_scan>();
    scan->result = biphoton::scan_delay(engine, d_min, d_max, steps, scan_options(options));
    scan->grid_n = engine.grid().size();
    for (std::size_t i = 0; i < scan->result.delays.size(); ++i) {
      const double d = scan->result.delays[i];
      const double oracle = biphoton::oracle_rate(engine.config(), d);
      const double eps = 1e-6 * engine.incoherent_rate(d);
      const double delta = std::abs(scan->result.rates[i] - oracle) / std::max(oracle, eps);
      scan->oracle_max_rel_delta = std::max(scan->oracle_max_rel_delta, delta);
    }
    *out = scan.release();
  });
}

void bph_scan_free(bph_scan* scan) { delete scan; }

bph_status bph_scan_summary_get(const bph_scan* scan, bph_scan_summary* out) {
  return guarded([&] {
    const auto& s = need(scan, "null scan");
    auto& o = need(out, "null output pointer");
    o.kind = kind_of(s.result.kind);
    o.visibility = s.result.visibility;
    o.baseline = s.result.baseline;
    o.extremum = s.result.extremum;
    o.wing_threshold_fs = s.result.wing_threshold_fs;
    o.oracle_max_rel_delta = s.oracle_max_rel_delta;
    o.points = s.result.delays.size();
    o.grid_n = s.grid_n;
  });
}

bph_status bph_scan_points(const bph_scan* scan, double* delays, double* rates, size_t capacity) {
  return guarded([&] {
    const auto& r = need(scan, "null scan").result;
    if (capacity < r.delays.size()) throw ArgumentError{"buffer smaller than the scan"};
    for (std::size_t i = 0; i < r.delays.size(); ++i) {
      if (delays) delays[i] = r.delays[i];
      if (rates) rates[i] = r.rates[i];
    }
  });
}

bph_status bph_scan_csv(const bph_scan* scan, char** out) {
  return guarded([&] {
    need(out, "null output pointer") = duplicate(biphoton::scan_csv(need(scan, "null scan").result));
  });
}

bph_status bph_scan_svg(const bph_scan* scan, const char* title, char** out) {
  return guarded([&] {
    need(out, "null output pointer") =
        duplicate(biphoton::scan_svg(need(scan, "null scan").result, title ? title : ""));
  });
}

bph_status bph_sweep_run(const bph_config* base, const char* axis, const double* values,
                         size_t count, double d_min, double d_max, size_t steps,
                         const bph_scan_options* options, bph_sweep** out) {
  return guarded([&] {
    need(out, "null output pointer");
    *out = nullptr;
    if (count > 0 && !values) throw ArgumentError{"null values"};
    biphoton::SweepSpec spec;
    spec.base = need(base, "null config").value;
    spec.axis = need_text(axis, "null axis");
    spec.values.assign(values, values + count);
    spec.d_min = d_min;
    spec.d_max = d_max;
    spec.steps = steps;
    spec.options = scan_options(options);
    *out = new bph_sweep{biphoton::run_sweep(spec)};
  });
}

void bph_sweep_free(bph_sweep* sweep) { delete sweep; }

size_t bph_sweep_row_count(const bph_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

bph_status bph_sweep_row_get(const bph_sweep* sweep, size_t index, bph_sweep_row* out) {
  return guarded([&] {
    const auto& rows = need(sweep, "null sweep").rows;
    auto& o = need(out, "null output pointer");
    if (index >= rows.size()) throw ArgumentError{"row index out of range"};
    const biphoton::SweepRow& r = rows[index];
    o = {r.value, r.visibility, kind_of(r.kind), r.extremum, r.baseline};
  });
}

bph_status bph_sweep_csv(const bph_sweep* sweep, char** out) {
  return guarded([&] {
    need(out, "null output pointer") = duplicate(biphoton::sweep_csv(need(sweep, "null sweep").rows));
  });
}

bph_status bph_pump_coherence_sweep(const bph_config* base, const double* coherence_fs,
                                    size_t count, double* visibilities) {
  return guarded([&] {
    if (count > 0 && (!coherence_fs || !visibilities)) throw ArgumentError{"null array"};
    const std::vector<double> taus(coherence_fs, coherence_fs + count);
    const std::vector<double> v =
        biphoton::pump_coherence_sweep(need(base, "null config").value, taus);
    std::copy(v.begin(), v.end(), visibilities);
  });
}

size_t bph_sweep_axis_count(void) { return biphoton::numeric_parameter_names().size(); }

const char* bph_sweep_axis_name(size_t index) {
  const auto& names = biphoton::numeric_parameter_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

bph_status bph_arrival_summary_get(const bph_config* config, double delay_fs,
                                   bph_arrival_summary* out) {
  return guarded([&] {
    auto& o = need(out, "null output pointer");
    const biphoton::TimeJointDensity joint =
        biphoton::arrival_time_joint(need(config, "null config").value, delay_fs);
    o = bph_arrival_summary{};
    o.mean_t_a = joint.mean_t_a;
    o.mean_t_b = joint.mean_t_b;
    o.total = joint.total;
    o.time_step = joint.time_step;
    o.grid_n = joint.times.size();
    o.path_count = std::min<std::size_t>(joint.paths.size(), 2);
    for (std::size_t p = 0; p < o.path_count; ++p) {
      o.path_is_rr[p] = joint.paths[p].label == biphoton::PathLabel::rr;
      o.path_mean_t_a[p] = joint.paths[p].mean_t_a;
      o.path_mean_t_b[p] = joint.paths[p].mean_t_b;
      o.path_total[p] = joint.paths[p].total;
    }
  });
}

size_t bph_check_count(void) { return biphoton::verification_check_names().size(); }

const char* bph_check_name(size_t index) {
  const auto& names = biphoton::verification_check_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

bph_status bph_verify_run(const bph_verify_options* options, bph_report** out) {
  return guarded([&] {
    need(out, "null output pointer");
    *out = nullptr;
    biphoton::VerifyOptions opts;
    const char* only = nullptr;
    if (options) {
      if (options->grid_n) opts.grid_n = options->grid_n;
      opts.threads = options->threads;
      only = options->only;
    }
    auto report = std::make_unique<bph_report>();
    if (only) {
      report->report.grid_n = opts.grid_n;
      report->report.checks.push_back(biphoton::run_check(only, opts));
    } else {
      report->report = biphoton::run_verification(opts);
    }
    *out = report.release();
  });
}

void bph_report_free(bph_report* report) { delete report; }

int bph_report_passed(const bph_report* report) { return report && report->report.passed(); }

const char* bph_report_first_failure(const bph_report* report) {
  if (!report) return nullptr;
  const biphoton::CheckResult* failure = report->report.first_failure();
  return failure ? failure->name.c_str() : nullptr;
}

bph_status bph_report_json(const bph_report* report, char** out) {
  return guarded([&] {
    need(out, "null output pointer") = duplicate(need(report, "null report").report.to_json());
  });
}

}  // extern "C"
