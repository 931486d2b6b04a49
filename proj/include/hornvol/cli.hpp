#pragma once

#include "hornvol/volume.hpp"

#include <optional>
#include <string>

namespace hornvol::cli {

inline constexpr int kSchemaVersion = 1;

// Exit codes: 0 success with all cross-checks passing, 1 a cross-check failed,
// 2 invalid input or unsupported request.
struct CommandResult {
    int exit_code = 0;
    std::string output;
};

IVec parse_labels(const std::string& text);
// Two comma-separated rationals ("17,4" or "15/2,7/2").
Point2 parse_point(const std::string& text);

struct LrOptions {
    std::string algebra = "B2";
    std::string lambda, mu, nu;
    std::string method = "all";  // klimyk | steinberg | bz | all
    std::string format = "text";  // text | json
};
CommandResult cmd_lr(const LrOptions& o);

struct VolumeOptions {
    std::string algebra = "B2";
    std::string lambda, mu, nu;
    std::string route = "all";  // direct | lr | ehrhart | polytope | all
    std::string format = "text";
};
CommandResult cmd_volume(const VolumeOptions& o);

struct GridOptions {
    std::string alpha, beta;
    std::string basis = "dynkin";  // dynkin | orthonormal
    int resolution = 20;
    std::string format = "csv";  // csv | svg | json
};
CommandResult cmd_grid(const GridOptions& o);

struct EhrhartOptions {
    std::string algebra = "B2";
    std::string lambda, mu, nu;
    int period = 0;   // 0: 2 for B, C, D and 1 otherwise
    long smax = -1;   // -1: enough samples to verify every class
    int degree = -1;  // -1: number of positive roots minus rank
    std::string format = "json";
};
CommandResult cmd_ehrhart(const EhrhartOptions& o);

struct CovolumeOptions {
    std::string family = "all";
    int max_rank = 8;
    std::string format = "md";  // md | json
    bool include_large = true;  // E7 and E8
};
CommandResult cmd_covolume(const CovolumeOptions& o);

struct SampleOptions {
    std::string group = "b2";  // b2 | so2
    std::string alpha, beta;   // b2: orthonormal pairs; so2: single positive numbers
    std::string basis = "orthonormal";
    long long n = 100000;
    unsigned long long seed = 1;
    int bins = 40;
    unsigned threads = 0;
    std::string histogram_csv;  // optional output path
};
CommandResult cmd_sample(const SampleOptions& o);

bool slow_tests_enabled();

}  // namespace hornvol::cli
