#include "json_io.hpp"

#include <json.hpp>

#include <limits>

namespace hdl {

namespace {

using nlohmann::json;

json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<int64_t>::min() &&
        v <= std::numeric_limits<int64_t>::max())
        return json(v.convert_to<int64_t>());
    return json(v.str());
}

json rat_to_json(const Rat& r) {
    return json::array(
        {int_to_json(numerator(r)), int_to_json(denominator(r))});
}

json pt_to_json(const Pt& p) {
    json a = json::array();
    for (const auto& x : p) a.push_back(rat_to_json(x));
    return a;
}

Int json_to_int(const json& j) {
    if (j.is_number_integer()) return Int(j.get<int64_t>());
    if (j.is_number_unsigned()) return Int(j.get<uint64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput,
                        "link file: malformed integer string");
        }
    }
    throw Error(ErrorCode::InvalidInput, "link file: expected an integer");
}

Rat json_to_rat(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error(ErrorCode::InvalidInput,
                    "link file: a rational must be a [numerator, denominator] "
                    "pair");
    Int num = json_to_int(j[0]), den = json_to_int(j[1]);
    if (den == 0)
        throw Error(ErrorCode::InvalidInput, "link file: zero denominator");
    return Rat(num) / Rat(den);
}

Pt json_to_pt(const json& j, size_t dim, const char* what) {
    if (!j.is_array() || j.size() != dim)
        throw Error(ErrorCode::InvalidInput,
                    std::string("link file: ") + what +
                        " has the wrong dimension");
    Pt p;
    for (const auto& c : j) p.push_back(json_to_rat(c));
    return p;
}

} // namespace

std::string serialize_link(const SimplicialLink& link) {
    json doc;
    doc["l"] = link.ell;
    doc["kind"] = link.kind == LinkKind::spherical ? "spherical" : "long";
    json comps = json::array();
    for (const auto& comp : link.comps) {
        json c;
        json verts = json::array(), dom = json::array();
        for (const auto& p : comp.embed) verts.push_back(pt_to_json(p));
        for (const auto& p : comp.domain) dom.push_back(pt_to_json(p));
        c["vertices"] = std::move(verts);
        c["domain_vertices"] = std::move(dom);
        json tets = json::array(), orient = json::array();
        for (const auto& t : comp.cx.tets)
            tets.push_back(json::array({t[0], t[1], t[2], t[3]}));
        for (int o : comp.cx.orient) orient.push_back(o);
        c["top_simplices"] = std::move(tets);
        c["orientations"] = std::move(orient);
        if (comp.standard) {
            json st;
            json lin = json::array();
            for (const auto& row : comp.standard->lin)
                lin.push_back(pt_to_json(row));
            st["lin"] = std::move(lin);
            st["off"] = pt_to_json(comp.standard->off);
            st["interior_radius"] = rat_to_json(comp.standard->interior_radius);
            c["standard"] = std::move(st);
        }
        comps.push_back(std::move(c));
    }
    doc["components"] = std::move(comps);
    json meta;
    meta["smale_term"] =
        link.smale_term ? rat_to_json(*link.smale_term) : json(nullptr);
    meta["provenance"] = link.provenance;
    doc["metadata"] = std::move(meta);
    return doc.dump(2) + "\n";
}

SimplicialLink parse_link(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::InvalidInput,
                    std::string("link file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("l") || !doc.contains("kind") ||
        !doc.contains("components"))
        throw Error(ErrorCode::InvalidInput,
                    "link file: missing l/kind/components");
    SimplicialLink link;
    link.ell = (int)json_to_int(doc["l"]).convert_to<long>();
    std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>()
                                               : std::string();
    if (kind == "spherical")
        link.kind = LinkKind::spherical;
    else if (kind == "long")
        link.kind = LinkKind::long_knot;
    else
        throw Error(ErrorCode::InvalidInput, "link file: unknown kind");

    if (!doc["components"].is_array())
        throw Error(ErrorCode::InvalidInput,
                    "link file: components must be an array");
    for (const auto& c : doc["components"]) {
        if (!c.is_object() || !c.contains("vertices") ||
            !c.contains("domain_vertices") || !c.contains("top_simplices") ||
            !c.contains("orientations"))
            throw Error(ErrorCode::InvalidInput,
                        "link file: component missing a required field");
        Component comp;
        const size_t ddim = c.contains("standard") ? 3 : 4;
        for (const auto& v : c["vertices"])
            comp.embed.push_back(json_to_pt(v, 6, "vertex"));
        for (const auto& v : c["domain_vertices"])
            comp.domain.push_back(json_to_pt(v, ddim, "domain vertex"));
        if (comp.embed.size() != comp.domain.size())
            throw Error(ErrorCode::InvalidInput,
                        "link file: vertices and domain_vertices disagree");
        comp.cx.vertex_count = (int)comp.embed.size();
        for (const auto& t : c["top_simplices"]) {
            if (!t.is_array() || t.size() != 4)
                throw Error(ErrorCode::InvalidInput,
                            "link file: a top simplex must have 4 vertices");
            std::array<int, 4> tet;
            for (int k = 0; k < 4; ++k) {
                Int idx = json_to_int(t[k]);
                if (idx < 0 || idx >= comp.cx.vertex_count)
                    throw Error(ErrorCode::InvalidInput,
                                "link file: vertex index out of range");
                tet[k] = (int)idx.convert_to<long>();
            }
            comp.cx.tets.push_back(tet);
        }
        for (const auto& o : c["orientations"]) {
            Int s = json_to_int(o);
            if (s != 1 && s != -1)
                throw Error(ErrorCode::InvalidInput,
                            "link file: orientations must be +-1");
            comp.cx.orient.push_back((int)s.convert_to<long>());
        }
        if (comp.cx.orient.size() != comp.cx.tets.size())
            throw Error(ErrorCode::InvalidInput,
                        "link file: orientations and top_simplices disagree");
        if (c.contains("standard")) {
            const auto& st = c["standard"];
            if (!st.is_object() || !st.contains("lin") || !st.contains("off") ||
                !st.contains("interior_radius") || !st["lin"].is_array() ||
                st["lin"].size() != 6)
                throw Error(ErrorCode::InvalidInput,
                            "link file: malformed standard block");
            LongInfo info;
            for (const auto& row : st["lin"])
                info.lin.push_back(json_to_pt(row, 3, "standard row"));
            info.off = json_to_pt(st["off"], 6, "standard offset");
            info.interior_radius = json_to_rat(st["interior_radius"]);
            comp.standard = std::move(info);
        }
        link.comps.push_back(std::move(comp));
    }
    if (doc.contains("metadata") && doc["metadata"].is_object()) {
        const auto& meta = doc["metadata"];
        if (meta.contains("smale_term") && !meta["smale_term"].is_null())
            link.smale_term = json_to_rat(meta["smale_term"]);
        if (meta.contains("provenance") && meta["provenance"].is_string())
            link.provenance = meta["provenance"].get<std::string>();
    }
    return link;
}

} // namespace hdl
