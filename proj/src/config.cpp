#include "leland/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "leland/presets.hpp"

namespace leland {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown key \"" + it.key() + "\" in " + where);
}

double need_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw std::invalid_argument("config: missing key \"" + key + "\" in " + where);
    if (!obj[key].is_number())
        throw std::invalid_argument("config: \"" + key + "\" in " + where + " must be a number");
    return obj[key].get<double>();
}

} // namespace

RunConfig RunConfig::parse(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
    reject_unknown(root, {"model", "market", "observation", "output"}, "top level");
    for (const char* section : {"model", "market", "observation"})
        if (!root.contains(section) || !root[section].is_object())
            throw std::invalid_argument(std::string("config: missing section \"") + section + "\"");

    RunConfig cfg;

    const json& model = root["model"];
    reject_unknown(model, {"sigma", "drift_c", "calibrate", "jump_rate", "jump_distribution"},
                   "model");
    cfg.sigma = need_number(model, "sigma", "model");
    if (model.contains("drift_c")) cfg.drift_c = need_number(model, "drift_c", "model");
    if (model.contains("calibrate")) {
        if (!model["calibrate"].is_boolean())
            throw std::invalid_argument("config: model.calibrate must be a boolean");
        cfg.calibrate = model["calibrate"].get<bool>();
    }
    if (!cfg.drift_c && !cfg.calibrate)
        throw std::invalid_argument("config: model needs drift_c or calibrate=true");
    if (model.contains("jump_rate")) cfg.jump_rate = need_number(model, "jump_rate", "model");
    if (cfg.jump_rate > 0.0) {
        if (!model.contains("jump_distribution"))
            throw std::invalid_argument("config: jump_rate > 0 needs a jump_distribution");
        const json& jd = model["jump_distribution"];
        if (jd.is_string()) {
            cfg.jump_preset = jd.get<std::string>();
            if (cfg.jump_preset != "folded-normal-ph6")
                throw std::invalid_argument("config: unknown jump_distribution preset \"" +
                                            cfg.jump_preset + "\"");
        } else if (jd.is_object()) {
            reject_unknown(jd, {"alpha", "T"}, "model.jump_distribution");
            if (!jd.contains("alpha") || !jd.contains("T"))
                throw std::invalid_argument("config: explicit jump_distribution needs alpha and T");
            auto alpha = jd["alpha"].get<std::vector<double>>();
            auto rows = jd["T"].get<std::vector<std::vector<double>>>();
            auto n = static_cast<Eigen::Index>(alpha.size());
            if (static_cast<Eigen::Index>(rows.size()) != n)
                throw std::invalid_argument("config: jump_distribution alpha/T size mismatch");
            Eigen::VectorXd a(n);
            Eigen::MatrixXd T(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                a(i) = alpha[static_cast<std::size_t>(i)];
                const auto& row = rows[static_cast<std::size_t>(i)];
                if (static_cast<Eigen::Index>(row.size()) != n)
                    throw std::invalid_argument("config: jump_distribution T must be square");
                for (Eigen::Index j = 0; j < n; ++j) T(i, j) = row[static_cast<std::size_t>(j)];
            }
            cfg.jump_alpha = std::move(a);
            cfg.jump_T = std::move(T);
        } else {
            throw std::invalid_argument(
                "config: jump_distribution must be a preset name or an {alpha, T} object");
        }
    }

    const json& market = root["market"];
    reject_unknown(market, {"r", "delta", "m", "rho", "kappa", "eta", "P", "V_T"}, "market");
    cfg.r = need_number(market, "r", "market");
    cfg.delta = need_number(market, "delta", "market");
    cfg.m = need_number(market, "m", "market");
    cfg.rho = need_number(market, "rho", "market");
    cfg.kappa = need_number(market, "kappa", "market");
    cfg.eta = need_number(market, "eta", "market");
    cfg.P = need_number(market, "P", "market");
    if (!market.contains("V_T")) throw std::invalid_argument("config: missing market.V_T");
    if (market["V_T"].is_string()) {
        if (market["V_T"].get<std::string>() != "P*rho/delta")
            throw std::invalid_argument("config: market.V_T must be a number or \"P*rho/delta\"");
        cfg.vt_rule = TaxThresholdRule::ProportionalToP;
    } else if (market["V_T"].is_number()) {
        cfg.vt_rule = TaxThresholdRule::Zero;
        cfg.vt_explicit = market["V_T"].get<double>();
    } else {
        throw std::invalid_argument("config: market.V_T must be a number or \"P*rho/delta\"");
    }

    const json& obs = root["observation"];
    reject_unknown(obs, {"mode", "lambda"}, "observation");
    if (!obs.contains("mode") || !obs["mode"].is_string())
        throw std::invalid_argument("config: observation.mode must be a string");
    std::string mode = obs["mode"].get<std::string>();
    if (mode == "continuous") {
        cfg.mode = ObservationMode::Continuous;
    } else if (mode == "periodic") {
        cfg.mode = ObservationMode::Periodic;
        cfg.lambda = need_number(obs, "lambda", "observation");
    } else {
        throw std::invalid_argument("config: observation.mode must be continuous or periodic");
    }
    if (cfg.mode == ObservationMode::Continuous && obs.contains("lambda"))
        throw std::invalid_argument("config: observation.lambda is only valid in periodic mode");

    if (root.contains("output")) {
        const json& out = root["output"];
        reject_unknown(out, {"csv"}, "output");
        if (out.contains("csv")) {
            if (!out["csv"].is_string())
                throw std::invalid_argument("config: output.csv must be a string");
            cfg.csv_path = out["csv"].get<std::string>();
        }
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string RunConfig::serialize() const {
    json model;
    model["sigma"] = sigma;
    if (drift_c) model["drift_c"] = *drift_c;
    model["calibrate"] = calibrate;
    model["jump_rate"] = jump_rate;
    if (jump_rate > 0.0) {
        if (!jump_preset.empty()) {
            model["jump_distribution"] = jump_preset;
        } else {
            json jd;
            jd["alpha"] = std::vector<double>(jump_alpha->data(),
                                              jump_alpha->data() + jump_alpha->size());
            std::vector<std::vector<double>> rows;
            for (Eigen::Index i = 0; i < jump_T->rows(); ++i) {
                std::vector<double> row;
                for (Eigen::Index j = 0; j < jump_T->cols(); ++j) row.push_back((*jump_T)(i, j));
                rows.push_back(std::move(row));
            }
            jd["T"] = rows;
            model["jump_distribution"] = jd;
        }
    }

    json market;
    market["r"] = r;
    market["delta"] = delta;
    market["m"] = m;
    market["rho"] = rho;
    market["kappa"] = kappa;
    market["eta"] = eta;
    market["P"] = P;
    if (vt_rule == TaxThresholdRule::ProportionalToP)
        market["V_T"] = "P*rho/delta";
    else
        market["V_T"] = vt_explicit.value_or(0.0);

    json obs;
    obs["mode"] = mode == ObservationMode::Periodic ? "periodic" : "continuous";
    if (mode == ObservationMode::Periodic) obs["lambda"] = *lambda;

    json root;
    root["model"] = model;
    root["market"] = market;
    root["observation"] = obs;
    if (csv_path) {
        json out;
        out["csv"] = *csv_path;
        root["output"] = out;
    }
    return root.dump(2) + "\n";
}

LevyModel RunConfig::build_model(bool force_raw_drift) const {
    std::optional<PhaseTypeDistribution> jumps;
    if (jump_rate > 0.0) {
        if (!jump_preset.empty())
            jumps = folded_normal_ph6();
        else
            jumps = PhaseTypeDistribution(*jump_alpha, *jump_T);
    }
    bool do_calibrate = calibrate && !force_raw_drift;
    if (force_raw_drift && !drift_c)
        throw std::invalid_argument("config: --no-calibrate requires model.drift_c");
    // placeholder drift when calibrating without one configured
    double c = drift_c ? *drift_c : -1.0;
    LevyModel model(sigma, c, jump_rate, std::move(jumps));
    if (do_calibrate) model = calibrate_drift(model, r, delta);
    return model;
}

double RunConfig::resolved_V_T() const {
    if (vt_rule == TaxThresholdRule::ProportionalToP) {
        if (delta <= 0.0)
            throw std::invalid_argument("config: V_T rule P*rho/delta needs delta > 0");
        return P * rho / delta;
    }
    return vt_explicit.value_or(0.0);
}

MarketParams RunConfig::build_market() const {
    MarketParams mkt;
    mkt.r = r;
    mkt.delta = delta;
    mkt.m = m;
    mkt.rho = rho;
    mkt.kappa = kappa;
    mkt.eta = eta;
    mkt.P = P;
    mkt.V_T = resolved_V_T();
    mkt.lambda = lambda;
    mkt.validate();
    return mkt;
}

} // namespace leland
