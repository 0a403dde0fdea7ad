// Copyright 2026 The heraldsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "heraldsim/version.hpp"

namespace heraldsim::cli {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

json sanitize(const json& j) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isnan(v)) return "nan";
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return j;
    }
    if (j.is_object()) {
        json out = json::object();
        for (const auto& [k, v] : j.items()) out[k] = sanitize(v);
        return out;
    }
    if (j.is_array()) {
        json out = json::array();
        for (const auto& v : j) out.push_back(sanitize(v));
        return out;
    }
    return j;
}

void stamp(json& report, const std::string& command, const ExperimentConfig& cfg) {
    report["command"] = command;
    report["schema_version"] = kSchemaVersion;
    report["artifact_version"] = std::string("heraldsim ") + kVersion;
    report["config_sha256"] = sha256_hex(cfg.source_text);
    report["seed"] = cfg.seed;
}

std::string render(const json& report) { return sanitize(report).dump(2) + "\n"; }

namespace {

void write_file(const std::filesystem::path& p, const std::string& contents) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + p.string());
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void write_outputs(const std::string& dir, const std::string& command, const CommandOutput& out,
                   const std::string& config_path) {
    const std::filesystem::path root(dir);
    std::filesystem::create_directories(root);
    write_file(root / (command + ".json"), render(out.report));
    json meta;
    meta["created_utc"] = utc_now();
    meta["config_path"] = std::filesystem::absolute(config_path).string();
    meta["report"] = command + ".json";
    json files = json::array();
    for (const auto& [name, contents] : out.artifacts) {
        write_file(root / name, contents);
        files.push_back(name);
    }
    meta["artifacts"] = files;
    write_file(root / (command + ".meta.json"), meta.dump(2) + "\n");
}

}  // namespace heraldsim::cli
