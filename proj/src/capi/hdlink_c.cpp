#include "hdlink/hdlink.h"

#include "core/generators.hpp"
#include "core/invariants.hpp"
#include "core/json_io.hpp"

#include <json.hpp>

#include <cstring>
#include <string>

using namespace hdl;
using nlohmann::json;

struct hdl_link {
    SimplicialLink link;
};

namespace {

thread_local std::string g_last_error = "no error";

hdl_status status_of(ErrorCode c) {
    int v = static_cast<int>(c);
    if (v >= 1 && v <= 22) return static_cast<hdl_status>(v);
    return HDL_ERR_UNKNOWN;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

json rat_json(const Rat& r) {
    auto big = [](const Int& v) {
        if (v >= std::numeric_limits<int64_t>::min() &&
        v <= std::numeric_limits<int64_t>::max())
            return json(v.convert_to<int64_t>());
        return json(v.str());
    };
    return json::array({big(numerator(r)), big(denominator(r))});
}

Rat parse_rat_param(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<int64_t>());
    if (j.is_array() && j.size() == 2) {
        auto side = [](const json& v) {
            if (v.is_number_integer()) return Int(v.get<int64_t>());
            if (v.is_string()) return Int(v.get<std::string>());
            throw Error(ErrorCode::InvalidInput, "bad rational parameter");
        };
        Int den = side(j[1]);
        if (den == 0)
            throw Error(ErrorCode::InvalidInput, "zero denominator parameter");
        return Rat(side(j[0])) / Rat(den);
    }
    throw Error(ErrorCode::InvalidInput, "bad rational parameter");
}

// Parse "a/b", "a" decimal strings.
Rat parse_rat_string(const char* s) {
    std::string t(s);
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(t));
        Int den(t.substr(slash + 1));
        if (den == 0)
            throw Error(ErrorCode::InvalidInput, "zero denominator");
        return Rat(Int(t.substr(0, slash))) / Rat(den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput,
                    "malformed rational (expected a or a/b)");
    }
}

template <typename F>
hdl_status guarded(F&& fn) {
    try {
        fn();
        return HDL_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HDL_ERR_UNKNOWN;
    }
}

} // namespace

extern "C" {

const char* hdl_last_error(void) { return g_last_error.c_str(); }

void hdl_string_free(char* s) { delete[] s; }

void hdl_link_free(hdl_link* link) { delete link; }

hdl_status hdl_gen(const char* name, const char* params, hdl_link** out) {
    return guarded([&] {
        if (!name || !out)
            throw Error(ErrorCode::InvalidInput, "hdl_gen: null argument");
        json p = json::object();
        if (params && *params) {
            try {
                p = json::parse(params);
            } catch (const std::exception& e) {
                throw Error(ErrorCode::InvalidInput,
                            std::string("hdl_gen: bad params JSON: ") +
                                e.what());
            }
        }
        std::string n(name);
        SimplicialLink link;
        if (n == "borromean") {
            Rat alpha = p.contains("alpha") ? parse_rat_param(p["alpha"])
                                            : Rat(4);
            Rat beta = p.contains("beta") ? parse_rat_param(p["beta"])
                                          : Rat(1);
            link = borromean(alpha, beta);
        } else if (n == "b1") {
            link = b1();
        } else if (n == "b2") {
            link = b2();
        } else if (n == "trefoil") {
            link = trefoil();
        } else if (n == "mirror-trefoil") {
            link = mirror_image(trefoil());
        } else if (n == "cable-trefoil") {
            link = cable(trefoil());
        } else if (n == "whitehead-aa") {
            link = graph_whitehead_aa();
        } else if (n == "whitehead-idid") {
            link = graph_whitehead_idid();
        } else if (n == "unknot") {
            link = unknot();
        } else if (n == "unlink") {
            int k = p.contains("k") ? p["k"].get<int>() : 1;
            link = unlink(k);
        } else {
            throw Error(ErrorCode::InvalidInput,
                        "hdl_gen: unknown generator '" + n + "'");
        }
        *out = new hdl_link{std::move(link)};
    });
}

hdl_status hdl_link_parse(const char* text, hdl_link** out) {
    return guarded([&] {
        if (!text || !out)
            throw Error(ErrorCode::InvalidInput, "hdl_link_parse: null");
        *out = new hdl_link{parse_link(text)};
    });
}

hdl_status hdl_link_serialize(const hdl_link* link, char** out_json) {
    return guarded([&] {
        if (!link || !out_json)
            throw Error(ErrorCode::InvalidInput, "hdl_link_serialize: null");
        *out_json = dup_string(serialize_link(link->link));
    });
}

hdl_status hdl_link_validate(const hdl_link* link, int* out_ok,
                             char** out_problems) {
    return guarded([&] {
        if (!link || !out_ok)
            throw Error(ErrorCode::InvalidInput, "hdl_link_validate: null");
        ValidationReport rep = validate(link->link);
        *out_ok = rep.ok ? 1 : 0;
        if (out_problems) {
            json arr = json::array();
            for (const auto& s : rep.problems) arr.push_back(s);
            *out_problems = dup_string(arr.dump());
        }
    });
}

hdl_status hdl_link_info(const hdl_link* link, char** out_json) {
    return guarded([&] {
        if (!link || !out_json)
            throw Error(ErrorCode::InvalidInput, "hdl_link_info: null");
        const SimplicialLink& l = link->link;
        json doc;
        doc["l"] = l.ell;
        doc["kind"] = l.kind == LinkKind::spherical ? "spherical" : "long";
        json comps = json::array();
        for (const auto& c : l.comps) {
            json jc;
            jc["vertices"] = c.cx.vertex_count;
            jc["top_simplices"] = c.cx.tets.size();
            jc["long"] = c.standard.has_value();
            comps.push_back(std::move(jc));
        }
        doc["components"] = std::move(comps);
        doc["smale_term"] =
            l.smale_term ? rat_json(*l.smale_term) : json(nullptr);
        doc["provenance"] = l.provenance;
        *out_json = dup_string(doc.dump(2) + "\n");
    });
}

hdl_status hdl_invariant(const hdl_link* link, const char* which,
                         uint64_t seed, const char* smale, char** out_report) {
    return guarded([&] {
        if (!link || !which || !out_report)
            throw Error(ErrorCode::InvalidInput, "hdl_invariant: null");
        const SimplicialLink& l = link->link;
        std::string w(which);
        InvariantReport rep;
        if (w == "V") {
            rep = invariant_V(l, seed);
        } else if (w == "W") {
            rep = invariant_W(l, seed);
        } else if (w == "H") {
            Rat term;
            if (smale && *smale)
                term = parse_rat_string(smale);
            else if (l.smale_term)
                term = *l.smale_term;
            else
                throw Error(ErrorCode::InvalidInput,
                            "hdl_invariant: H needs a smale term (none in "
                            "the link metadata and none supplied)");
            rep = invariant_H(l, term, seed);
        } else {
            throw Error(ErrorCode::InvalidInput,
                        "hdl_invariant: which must be V, W or H");
        }
        json doc;
        doc["which"] = rep.which;
        json vals = json::array();
        for (const auto& v : rep.values) vals.push_back(rat_json(v));
        doc["values"] = std::move(vals);
        json inter = json::array();
        for (const auto& kv : rep.intermediates)
            inter.push_back(json::array({kv.first, rat_json(kv.second)}));
        doc["intermediates"] = std::move(inter);
        json checks = json::array();
        for (const auto& c : rep.consistency)
            checks.push_back(json{{"name", c.name}, {"ok", c.ok}});
        doc["consistency"] = std::move(checks);
        doc["smale_term"] =
            rep.smale_term ? rat_json(*rep.smale_term) : json(nullptr);
        doc["smale_note"] = rep.smale_note;
        doc["all_ok"] = rep.all_ok();
        *out_report = dup_string(doc.dump(2) + "\n");
    });
}

hdl_status hdl_locus(const hdl_link* link, uint64_t seed, char** out_json) {
    return guarded([&] {
        if (!link || !out_json)
            throw Error(ErrorCode::InvalidInput, "hdl_locus: null");
        SimplicialLink generic = resolve_to_generic(link->link, seed);
        DoubleLocus dl = double_locus(generic);
        json doc;
        doc["curves"] = json::array();
        for (const auto& c : dl.curves) {
            json jc;
            jc["segments"] = c.segs.size();
            jc["closed"] = c.closed;
            jc["comp_over"] = c.comp_over;
            jc["comp_under"] = c.comp_under;
            Chain over = preimage_chain(generic, c, true, true);
            Chain under = preimage_chain(generic, c, false, true);
            if (c.comp_over == c.comp_under && c.closed)
                jc["preimage_linking"] =
                    linking_number(over, under, seed + 29)
                        .str();
            doc["curves"].push_back(std::move(jc));
        }
        doc["curve_count"] = dl.curves.size();
        *out_json = dup_string(doc.dump(2) + "\n");
    });
}

hdl_status hdl_perturb(const hdl_link* link, uint64_t seed, hdl_link** out) {
    return guarded([&] {
        if (!link || !out)
            throw Error(ErrorCode::InvalidInput, "hdl_perturb: null");
        *out = new hdl_link{perturb(link->link, Rat(1, 128), seed)};
    });
}

hdl_status hdl_shear(const hdl_link* link, int index, hdl_link** out) {
    return guarded([&] {
        if (!link || !out)
            throw Error(ErrorCode::InvalidInput, "hdl_shear: null");
        *out = new hdl_link{shear_projection(link->link, index)};
    });
}

} // extern "C"
