#include "levycramer/batch_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levycramer/errors.hpp"

namespace levycramer {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("batch file: bad " + what + " '" + tok + "'");
    }
}

}  // namespace

void write_batch_csv(const SampleBatch& batch, std::ostream& os) {
    os << "# model=" << batch.model_spec << "\n";
    os << "# seed=" << batch.seed << "\n";
    os << "# step=" << (batch.step ? fmt17(*batch.step) : "exact") << "\n";
    os << "# tol=" << fmt17(batch.truncation_tol) << "\n";
    os << "# horizon=" << batch.horizon.to_string() << "\n";
    for (double v : batch.values) os << fmt17(v) << "\n";
}

SampleBatch read_batch_csv(std::istream& is) {
    SampleBatch batch;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::size_t key_start = 1;
            while (key_start < eq && line[key_start] == ' ') ++key_start;
            const std::string key = line.substr(key_start, eq - key_start);
            const std::string val = line.substr(eq + 1);
            if (key == "model") {
                batch.model_spec = val;
            } else if (key == "seed") {
                batch.seed = std::strtoull(val.c_str(), nullptr, 10);
            } else if (key == "step") {
                if (val == "exact")
                    batch.step.reset();
                else
                    batch.step = parse_double(val, "step");
            } else if (key == "tol") {
                batch.truncation_tol = parse_double(val, "tol");
            } else if (key == "horizon") {
                batch.horizon = Horizon::from_string(val);
            }
            continue;
        }
        batch.values.push_back(parse_double(line, "value"));
    }
    if (batch.values.empty()) throw ParseError("batch file: no values");
    return batch;
}

std::string batch_to_json(const SampleBatch& batch) {
    nlohmann::json j;
    j["model"] = batch.model_spec;
    j["seed"] = batch.seed;
    if (batch.step)
        j["step"] = *batch.step;
    else
        j["step"] = "exact";
    j["tol"] = batch.truncation_tol;
    j["horizon"] = batch.horizon.to_string();
    j["values"] = batch.values;
    return j.dump();
}

SampleBatch batch_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("batch json: ") + e.what());
    }
    SampleBatch batch;
    try {
        batch.model_spec = j.at("model").get<std::string>();
        batch.seed = j.at("seed").get<std::uint64_t>();
        if (j.at("step").is_string())
            batch.step.reset();
        else
            batch.step = j.at("step").get<double>();
        batch.truncation_tol = j.at("tol").get<double>();
        batch.horizon = Horizon::from_string(j.at("horizon").get<std::string>());
        batch.values = j.at("values").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("batch json: ") + e.what());
    }
    if (batch.values.empty()) throw ParseError("batch json: no values");
    return batch;
}

void save_batch(const SampleBatch& batch, const std::string& path,
                const std::string& format) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    if (format == "csv") {
        write_batch_csv(batch, os);
    } else if (format == "json") {
        os << batch_to_json(batch) << "\n";
    } else {
        throw ParseError("unknown batch format '" + format + "'");
    }
    if (!os) throw Error("write to '" + path + "' failed");
}

SampleBatch load_batch(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    // Sniff the format: JSON envelopes start with '{'.
    const int first = is.peek();
    if (first == '{') {
        std::ostringstream ss;
        ss << is.rdbuf();
        return batch_from_json(ss.str());
    }
    return read_batch_csv(is);
}

}  // namespace levycramer
