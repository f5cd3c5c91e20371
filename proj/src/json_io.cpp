#include "anticyclo/json_io.hpp"

namespace anticyclo {

namespace {

std::string int_str(const Int& x) { return x.str(); }

Int int_from(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw BadInput("integer field must be a number or decimal string");
}

void require_schema(const Json& j, const char* type) {
    if (!j.is_object()) throw BadInput("expected a JSON object");
    if (j.value("schema", "") != kSchemaVersion) throw BadInput("unsupported schema version");
    if (j.value("type", "") != type)
        throw BadInput(std::string("expected object of type ") + type);
}

} // namespace

Json to_json(const Padic& x) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "padic";
    j["p"] = x.prime();
    j["prec"] = x.precision();
    if (x.is_zero()) {
        j["val"] = x.precision();
        j["unit"] = "0";
    } else {
        j["val"] = x.valuation();
        j["unit"] = int_str(x.unit_part());
    }
    return j;
}

Padic padic_from_json(const Json& j) {
    require_schema(j, "padic");
    long p = j.at("p").get<long>();
    long prec = j.at("prec").get<long>();
    Int unit = int_from(j.at("unit"));
    if (unit == 0) return Padic::zero(p, prec);
    return Padic::from_unit(p, unit, j.at("val").get<long>(), prec);
}

Json to_json(const GroupRingElement& f) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "groupring";
    j["p"] = f.prime();
    j["n"] = f.level();
    Json c = Json::array();
    for (const auto& x : f.coeffs()) c.push_back(int_str(x));
    j["coeffs"] = c;
    return j;
}

GroupRingElement group_ring_from_json(const Json& j) {
    require_schema(j, "groupring");
    std::vector<Int> c;
    for (const auto& x : j.at("coeffs")) c.push_back(int_from(x));
    return GroupRingElement(j.at("p").get<long>(), j.at("n").get<long>(), std::move(c));
}

Json to_json(const IwasawaSeries& s) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "series";
    j["p"] = s.prime();
    j["deg"] = s.degree();
    j["prec"] = s.coeff(0).precision();
    Json c = Json::array();
    for (const auto& x : s.coeffs()) c.push_back(to_json(x));
    j["coeffs"] = c;
    return j;
}

IwasawaSeries series_from_json(const Json& j) {
    require_schema(j, "series");
    std::vector<Padic> c;
    for (const auto& x : j.at("coeffs")) c.push_back(padic_from_json(x));
    return IwasawaSeries(j.at("p").get<long>(), std::move(c));
}

namespace {

template <typename R, typename FromJson>
Mat<R> mat_from_json_impl(const Json& j, const char* ring, FromJson from) {
    require_schema(j, "matrix");
    if (j.value("ring", "") != ring) throw BadInput("matrix ring mismatch");
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const Json& e = j.at("entries");
    if (e.size() != rows * cols) throw InconsistentDimensions("matrix entry count");
    std::vector<std::vector<R>> data(rows);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj) data[i].push_back(from(e.at(idx++)));
    return Mat<R>::from_rows(data);
}

template <typename M>
Json mat_to_json_impl(const M& m, const char* ring) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "matrix";
    j["ring"] = ring;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json e = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t jj = 0; jj < m.cols(); ++jj) e.push_back(to_json(m.at(i, jj)));
    j["entries"] = e;
    return j;
}

} // namespace

Json to_json(const PadicMat& m) { return mat_to_json_impl(m, "padic"); }

PadicMat padic_mat_from_json(const Json& j) {
    return mat_from_json_impl<Padic>(j, "padic", [](const Json& x) { return padic_from_json(x); });
}

Json to_json(const GroupRingMat& m) { return mat_to_json_impl(m, "groupring"); }

GroupRingMat group_ring_mat_from_json(const Json& j) {
    return mat_from_json_impl<GroupRingElement>(
        j, "groupring", [](const Json& x) { return group_ring_from_json(x); });
}

Json to_json(const CurveData& e) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "curve";
    j["a1"] = int_str(e.a1);
    j["a2"] = int_str(e.a2);
    j["a3"] = int_str(e.a3);
    j["a4"] = int_str(e.a4);
    j["a6"] = int_str(e.a6);
    return j;
}

CurveData curve_from_json(const Json& j) {
    require_schema(j, "curve");
    return CurveData{int_from(j.at("a1")), int_from(j.at("a2")), int_from(j.at("a3")),
                     int_from(j.at("a4")), int_from(j.at("a6"))};
}

Json to_json(const HeightSystem& sys) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "heights";
    j["r_plus"] = sys.r_plus;
    j["r_minus"] = sys.r_minus;
    Json hs = Json::array();
    for (const auto& h : sys.H) hs.push_back(to_json(h));
    j["H"] = hs;
    j["t"] = to_json(sys.t);
    j["t_prime"] = to_json(sys.t_prime);
    return j;
}

HeightSystem height_system_from_json(const Json& j) {
    require_schema(j, "heights");
    HeightSystem sys;
    sys.r_plus = j.at("r_plus").get<long>();
    sys.r_minus = j.at("r_minus").get<long>();
    for (const auto& h : j.at("H")) sys.H.push_back(padic_mat_from_json(h));
    sys.t = padic_from_json(j.at("t"));
    sys.t_prime = padic_from_json(j.at("t_prime"));
    return sys;
}

Json to_json(const BSDInput& in) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "bsd_input";
    j["p"] = in.p;
    j["a_p"] = in.a_p;
    j["r_plus"] = in.r_plus;
    j["r_minus"] = in.r_minus;
    j["sha"] = int_str(in.sha);
    Json tam = Json::array();
    for (const auto& c : in.tamagawa) tam.push_back(int_str(c));
    j["tamagawa"] = tam;
    j["u_K"] = int_str(in.u_K);
    j["c_E"] = int_str(in.c_E);
    j["log_y"] = to_json(in.log_y);
    j["heights"] = to_json(in.heights);
    j["heegner_hypothesis"] = in.heegner_hypothesis;
    j["star_condition"] = in.star_condition;
    return j;
}

BSDInput bsd_input_from_json(const Json& j) {
    require_schema(j, "bsd_input");
    BSDInput in;
    in.p = j.at("p").get<long>();
    in.a_p = j.at("a_p").get<long>();
    in.r_plus = j.at("r_plus").get<long>();
    in.r_minus = j.at("r_minus").get<long>();
    in.sha = int_from(j.at("sha"));
    for (const auto& c : j.at("tamagawa")) in.tamagawa.push_back(int_from(c));
    in.u_K = int_from(j.at("u_K"));
    in.c_E = int_from(j.at("c_E"));
    in.log_y = padic_from_json(j.at("log_y"));
    in.heights = height_system_from_json(j.at("heights"));
    in.heegner_hypothesis = j.value("heegner_hypothesis", false);
    in.star_condition = j.value("star_condition", false);
    return in;
}

Json padic_digits(const Padic& x) {
    Json j;
    j["p"] = x.prime();
    j["prec"] = x.precision();
    Json digits = Json::array();
    if (x.is_zero()) {
        j["val"] = x.precision();
        j["zero"] = true;
    } else {
        const long v = x.valuation();
        j["val"] = v;
        j["zero"] = false;
        Int u = x.unit_part();
        for (long k = v; k < x.precision(); ++k) {
            digits.push_back(static_cast<long>(u % x.prime()));
            u /= x.prime();
        }
    }
    j["digits"] = digits;
    return j;
}

} // namespace anticyclo
