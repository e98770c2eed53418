#include "eulerfv.h"

#include <cstring>
#include <string>

#include "eulerfv/commands.hpp"
#include "eulerfv/errors.hpp"

struct efv_config {
  efv::IniDocument doc;
};

namespace {

void copy_message(const std::string& msg, char* buf, size_t capacity) {
  if (!buf || capacity == 0) return;
  const size_t n = msg.size() < capacity - 1 ? msg.size() : capacity - 1;
  std::memcpy(buf, msg.data(), n);
  buf[n] = '\0';
}

template <typename Fn>
efv_status guarded(Fn&& fn, char* err, size_t err_capacity) {
  try {
    fn();
    return EFV_OK;
  } catch (const efv::ConfigError& e) {
    copy_message(e.what(), err, err_capacity);
    return EFV_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    copy_message(e.what(), err, err_capacity);
    return EFV_ERR_CONFIG;
  } catch (const std::exception& e) {
    copy_message(e.what(), err, err_capacity);
    return EFV_ERR_RUNTIME;
  }
}

} // namespace

extern "C" {

const char* efv_version(void) { return "eulerfv 1.0.0"; }

efv_config* efv_config_create(void) { return new efv_config{}; }

efv_config* efv_config_load(const char* path, char* err, size_t err_capacity) {
  efv_config* cfg = nullptr;
  const efv_status st = guarded(
      [&] {
        if (!path) throw efv::ConfigError("config path is null");
        cfg = new efv_config{efv::IniDocument::load_file(path)};
      },
      err, err_capacity);
  return st == EFV_OK ? cfg : nullptr;
}

efv_status efv_config_set(efv_config* cfg, const char* dotted_key, const char* value,
                          char* err, size_t err_capacity) {
  return guarded(
      [&] {
        if (!cfg) throw efv::ConfigError("config handle is null");
        if (!dotted_key || !value) throw efv::ConfigError("override key/value is null");
        cfg->doc.set(dotted_key, value);
      },
      err, err_capacity);
}

void efv_config_destroy(efv_config* cfg) { delete cfg; }

efv_status efv_cmd_solve(const efv_config* cfg, char* err, size_t err_capacity) {
  return guarded(
      [&] {
        if (!cfg) throw efv::ConfigError("config handle is null");
        efv::cmd_solve(efv::resolve_config(cfg->doc));
      },
      err, err_capacity);
}

efv_status efv_cmd_study(const efv_config* cfg, char* classification,
                         size_t classification_capacity, char* err, size_t err_capacity) {
  return guarded(
      [&] {
        if (!cfg) throw efv::ConfigError("config handle is null");
        const efv::Classification label = efv::cmd_study(efv::resolve_config(cfg->doc));
        copy_message(efv::to_string(label), classification, classification_capacity);
      },
      err, err_capacity);
}

efv_status efv_cmd_consistency(const efv_config* cfg, char* err, size_t err_capacity) {
  return guarded(
      [&] {
        if (!cfg) throw efv::ConfigError("config handle is null");
        efv::cmd_consistency(efv::resolve_config(cfg->doc));
      },
      err, err_capacity);
}

efv_status efv_cmd_audit(const efv_config* cfg, char* err, size_t err_capacity) {
  return guarded(
      [&] {
        if (!cfg) throw efv::ConfigError("config handle is null");
        const efv::AuditSummary summary = efv::cmd_audit(efv::resolve_config(cfg->doc));
        if (summary.failures > 0)
          throw efv::SolveError("energy audit failed at " + std::to_string(summary.failures) +
                                " of " + std::to_string(summary.steps) + " steps");
      },
      err, err_capacity);
}

efv_status efv_selftest(char* report, size_t report_capacity) {
  efv::SelftestResult result;
  const efv_status st = guarded([&] { result = efv::selftest(); }, report, report_capacity);
  if (st != EFV_OK) return st;
  copy_message(result.report, report, report_capacity);
  return result.failed == 0 ? EFV_OK : EFV_ERR_RUNTIME;
}

} // extern "C"
