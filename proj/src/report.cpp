#include "gaugelift/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gaugelift {

std::string format_sig17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::string text;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text += ',';
        text += header[i];
    }
    text += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::invalid_argument("csv row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) text += ',';
            text += format_sig17(row[i]);
        }
        text += '\n';
    }
    write_text_file(path, text);
}

Json json_of(const PoissonStats& s) {
    Json j;
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    j["rel_residual"] = s.rel_residual;
    return j;
}

Json json_of(const TraceRow& r) {
    Json j;
    j["k"] = r.k;
    j["v_norm"] = r.v_norm;
    j["diff_norm"] = r.diff_norm;
    j["contraction"] = r.contraction;
    j["gauge_residual"] = r.gauge_residual;
    j["w_norm"] = r.w_norm;
    j["det_defect"] = r.det_defect;
    return j;
}

Json json_of(const MeasuredConstants& c) {
    Json j;
    j["c0"] = c.c0;
    j["c1"] = c.c1;
    j["c2"] = c.c2;
    j["eps_bound"] = c.eps_bound;
    return j;
}

Json json_of(const SolveResult& r) {
    Json j;
    j["converged"] = r.converged;
    j["diverged"] = r.diverged;
    j["message"] = r.message;
    j["iterations"] = r.iterations;
    j["epsilon"] = r.epsilon;
    j["lambda"] = r.lambda;
    j["constants"] = json_of(r.constants);
    j["gauge_residual"] = r.gauge_residual;
    j["connection_residual"] = r.connection_residual;
    j["w_residual"] = r.w_residual;
    j["coulomb_residual"] = r.coulomb_residual;
    j["alpha_norm"] = r.alpha_norm;
    j["w_norm"] = r.w_norm;
    j["det_defect"] = r.det_defect;
    j["group_defect"] = r.group_defect;
    j["max_late_contraction"] = r.max_late_contraction;
    j["u_norm"] = r.u_norm;
    j["input_norm"] = r.input_norm;
    j["bound_ratio"] = r.bound_ratio;
    Json tr = Json::array();
    for (const TraceRow& row : r.trace) tr.push_back(json_of(row));
    j["trace"] = tr;
    return j;
}

Json json_of(const LambdaSweepResult& r) {
    Json j;
    j["all_converged"] = r.all_converged;
    j["c3"] = r.c3;
    Json rows = Json::array();
    for (const LambdaRow& row : r.rows) {
        Json e;
        e["lambda"] = row.lambda;
        e["converged"] = row.converged;
        e["iterations"] = row.iterations;
        e["epsilon"] = row.epsilon;
        e["w_norm"] = row.w_norm;
        e["gauge_residual"] = row.gauge_residual;
        e["u_norm"] = row.u_norm;
        rows.push_back(e);
    }
    j["rows"] = rows;
    return j;
}

Json json_of(const SpectrumResult& r) {
    Json j;
    j["zero_operator"] = r.zero_operator;
    j["spectral_radius"] = r.spectral_radius;
    j["re"] = r.re;
    j["im"] = r.im;
    j["schedule_distance"] = r.schedule_distance;
    return j;
}

Json json_of(const SmoothnessReport& r) {
    Json j;
    j["full_pipeline"] = r.full_pipeline;
    j["growth_exponent"] = r.growth_exponent;
    j["epsilon"] = r.epsilon;
    Json rows = Json::array();
    for (const SmoothnessLevel& l : r.levels) {
        Json e;
        e["shape"] = l.shape;
        e["h"] = l.h;
        e["value_norm"] = l.value_norm;
        e["grad_norm"] = l.grad_norm;
        e["curl_norm"] = l.curl_norm;
        e["local_slope"] = l.local_slope;
        e["coulomb"] = l.coulomb;
        rows.push_back(e);
    }
    j["levels"] = rows;
    return j;
}

}  // namespace gaugelift
