#pragma once

#include <stdexcept>
#include <string>

#include "qpmod/gl_module.hpp"
#include "qpmod/tensor_qp.hpp"

namespace qpmod {

// exit_code 2 for malformed input, 1 when the matrices fail rep_check
class ConfigError : public std::runtime_error {
public:
    ConfigError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

struct ModuleConfig {
    GlModule omega;
    MuVector mu;
};

ModuleConfig load_module_config(const std::string& path);
ModuleConfig parse_module_config(const std::string& json_text);
std::string module_config_json(const GlModule& omega, const MuVector& mu);

// "1/2,0,1+2i"
MuVector parse_mu_csv(const std::string& csv);

}  // namespace qpmod
