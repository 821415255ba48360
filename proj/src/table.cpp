#include "levysup/cli.hpp"

#include "levysup/errors.hpp"
#include "levysup/model.hpp"
#include "levysup/passage_time.hpp"
#include "levysup/supremum_law.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace levysup {

namespace {

struct Row {
    double x;
    Evaluation e;
};

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + s + "'");
    return v;
}

Evaluation evaluate(const TableOptions& o, const ModelParams& p, double x) {
    const std::string& q = o.quantity;
    if (q == "density") return density_eval(p, o.t, x);
    if (q == "cdf") return cdf_eval(p, o.t, x);
    if (q == "passage-cdf") return passage_cdf_eval(PassageQuery(p, x), o.t);
    if (q == "passage-density") return passage_density_eval(PassageQuery(p, x), o.t);
    if (q == "passage-laplace") {
        const PassageLaplaceEval e = passage_laplace_eval(PassageQuery(p, x), o.p);
        return {e.value, e.method, e.terms_used, e.est_error};
    }
    if (q == "laplace") {
        const double v = laplace_supremum(p, o.t, x);
        const double w = p.kappa() * o.t * std::pow(x, p.alpha());
        return {v, w > 30.0 ? Method::tail : Method::series, 1, 1e-15 * std::abs(v)};
    }
    const double v = mean_supremum(p, o.t);
    return {v, Method::series, 1, 1e-15 * v};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv_row(std::ostream& out, const Row& r) {
    out << fmt17(r.x) << ',' << fmt17(r.e.value) << ',' << to_string(r.e.method) << ',' << r.e.terms_used << ','
        << fmt17(r.e.est_error) << '\n';
}

}  // namespace

const std::vector<std::string>& table_quantities() {
    static const std::vector<std::string> q{"density",         "cdf",     "passage-cdf", "passage-density",
                                            "passage-laplace", "laplace", "mean"};
    return q;
}

std::vector<double> parse_range(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("range must look like start:step:stop");
    const double start = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double stop = parse_number(parts[2]);
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("range needs step > 0 and stop >= start");
    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e6) throw std::invalid_argument("range has more than 1e6 points");
    std::vector<double> xs;
    for (int k = 0; k <= int(count); ++k) xs.push_back(start + k * step);
    return xs;
}

std::vector<double> parse_list(const std::string& spec) {
    std::vector<double> xs;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) xs.push_back(parse_number(item));
    if (xs.empty()) throw std::invalid_argument("empty list");
    return xs;
}

int run_table(const TableOptions& o, std::ostream& out, std::ostream& err) {
    const auto& qs = table_quantities();
    if (std::find(qs.begin(), qs.end(), o.quantity) == qs.end()) {
        err << "error: unknown quantity '" << o.quantity << "'\n";
        return kExitUsage;
    }
    if (o.format != "csv" && o.format != "json") {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
    }
    if (!(o.t > 0.0)) {
        err << "error: --t must be positive\n";
        return kExitUsage;
    }
    std::optional<ModelParams> params;
    try {
        params = o.c ? ModelParams::from_levy_constant(o.alpha, *o.c) : ModelParams::normalized(o.alpha);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::vector<double> xs = o.xs;
    if (o.quantity == "mean") {
        xs = {o.t};
    } else if (xs.empty()) {
        err << "error: --x or --x-list is required for quantity " << o.quantity << '\n';
        return kExitUsage;
    }

    std::vector<Row> rows;
    std::optional<std::string> failure;
    double failed_x = 0.0;
    for (double x : xs) {
        try {
            rows.push_back({x, evaluate(o, *params, x)});
        } catch (const std::exception& e) {
            failure = e.what();
            failed_x = x;
            break;
        }
    }

    if (o.format == "csv") {
        out << "x,value,method,terms_used,est_error\n";
        for (const Row& r : rows) write_csv_row(out, r);
    } else {
        nlohmann::json j;
        j["quantity"] = o.quantity;
        j["alpha"] = params->alpha();
        j["c"] = params->c();
        j["kappa"] = params->kappa();
        j["t"] = o.t;
        if (o.quantity == "passage-laplace") j["p"] = o.p;
        j["rows"] = nlohmann::json::array();
        for (const Row& r : rows) {
            j["rows"].push_back({{"x", r.x},
                                 {"value", r.e.value},
                                 {"method", std::string(to_string(r.e.method))},
                                 {"terms_used", r.e.terms_used},
                                 {"est_error", r.e.est_error}});
        }
        if (failure) j["error"] = {{"x", failed_x}, {"message", *failure}};
        out << j.dump(2) << '\n';
    }
    out.flush();
    if (failure) {
        err << "error: evaluation failed at x = " << fmt17(failed_x) << ": " << *failure << '\n';
        return kExitEvaluation;
    }
    return kExitOk;
}

}  // namespace levysup
