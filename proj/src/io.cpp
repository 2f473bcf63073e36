#include "scl/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scl {
namespace io {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

double parse_double(std::string_view token, const std::filesystem::path& path) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw std::runtime_error("bad numeric field '" + std::string(token) + "' in " +
                                 path.string());
    return v;
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::size_t end = comma == std::string::npos ? line.size() : comma;
            row.push_back(parse_double(std::string_view(line).substr(start, end - start), path));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty CSV: " + path.string());
    for (const auto& r : rows)
        if (r.size() != rows.front().size())
            throw std::runtime_error("ragged CSV rows in " + path.string());
    return rows;
}

}  // namespace

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
    std::ofstream out = open_out(path);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_vector_csv(const std::filesystem::path& path, const Vector& v) {
    std::ofstream out = open_out(path);
    for (Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
    const auto rows = read_rows(path);
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return m;
}

Vector read_vector_csv(const std::filesystem::path& path) {
    const auto rows = read_rows(path);
    Vector v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != 1)
            throw std::runtime_error("expected one column in " + path.string());
        v[static_cast<Index>(i)] = rows[i][0];
    }
    return v;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    json j;
    in >> j;
    return j;
}

json spec_to_json(const SynthSpec& spec) {
    return json{{"n", spec.n},
                {"p", spec.p},
                {"s1", spec.s1},
                {"s2", spec.s2},
                {"theta", spec.theta},
                {"loss", to_string(spec.loss)},
                {"seed", spec.seed},
                {"flip_labels", spec.flip_labels}};
}

SynthSpec spec_from_json(const json& j) {
    SynthSpec spec;
    spec.n = j.at("n").get<Index>();
    spec.p = j.at("p").get<Index>();
    spec.s1 = j.at("s1").get<Index>();
    spec.s2 = j.at("s2").get<Index>();
    spec.theta = j.at("theta").get<double>();
    spec.loss = loss_from_string(j.at("loss").get<std::string>());
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.flip_labels = j.value("flip_labels", false);
    return spec;
}

namespace {

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vector vector_from_json(const json& arr) {
    Vector v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Index>(i)] = arr[i].get<double>();
    return v;
}

json support_to_json(const IndexSet& s) {
    json arr = json::array();
    for (Index i : s) arr.push_back(i);
    return arr;
}

}  // namespace

json truth_to_json(const GroundTruth& truth) {
    return json{{"beta1_true", vector_to_json(truth.beta1_true)},
                {"beta2_true", vector_to_json(truth.beta2_true)},
                {"support1", support_to_json(truth.support1)},
                {"support2", support_to_json(truth.support2)}};
}

json solution_to_json(const Iterate& beta) {
    return json{{"beta1", vector_to_json(beta.beta1())},
                {"beta2", vector_to_json(beta.beta2())},
                {"support1", support_to_json(beta.support1())},
                {"support2", support_to_json(beta.support2())}};
}

Iterate solution_from_json(const json& j) {
    return Iterate(vector_from_json(j.at("beta1")), vector_from_json(j.at("beta2")));
}

void write_instance(const std::filesystem::path& dir, const ProblemData& data) {
    std::filesystem::create_directories(dir);
    write_matrix_csv(dir / "X.csv", data.X);
    write_matrix_csv(dir / "Z.csv", data.Z);
    write_vector_csv(dir / "y.csv", data.y);
}

ProblemData read_instance(const std::filesystem::path& dir, Loss loss) {
    ProblemData data;
    data.X = read_matrix_csv(dir / "X.csv");
    data.Z = read_matrix_csv(dir / "Z.csv");
    data.y = read_vector_csv(dir / "y.csv");
    data.loss = loss;
    data.validate();
    return data;
}

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterationRecord>& trace) {
    std::ofstream out = open_out(path);
    out << "k,objective,alpha,q,step,gate,tol\n";
    for (const auto& rec : trace) {
        out << rec.k << ',' << format_double(rec.objective) << ',' << format_double(rec.alpha)
            << ',' << rec.q << ',' << to_string(rec.step) << ',' << to_string(rec.gate) << ','
            << format_double(rec.tol) << '\n';
    }
}

}  // namespace io
}  // namespace scl
