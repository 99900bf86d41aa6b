#pragma once

#include <string>

#include <json.hpp>

#include "hadamard/convex.hpp"
#include "hadamard/mapping.hpp"
#include "hadamard/sampling.hpp"
#include "hadamard/schedule.hpp"
#include "hadamard/space.hpp"

// Canonical JSON encodings. Decoders throw ConfigError carrying the JSON
// pointer of the offending field, prefixed with `path`.
//
//   space     {"type":"euclidean","dim":2}
//             {"type":"hyperbolic","dim":2}
//             {"type":"tree","topology":{"vertices":N,"edges":[[u,v,len],...]}}
//             {"type":"product","left":<space>,"right":<space>}
//             {"type":"distorted_euclidean","dim":2,"exponent":1.5}
//   point     euclidean: [x1,...];  hyperbolic: [x0,x1,...] or {"spatial":[x1,...]}
//             tree: {"edge":e,"offset":t};  product: {"left":<point>,"right":<point>}
//   set       {"type":"whole"} | {"type":"ball","center":P,"radius":r}
//             {"type":"segment","a":P,"b":P} | {"type":"subtree","vertices":[...]}
//             {"type":"halfspace","normal":[...],"offset":c}
//   mapping   {"type":"identity"} | {"type":"rotation","center":P,"angle":rad}
//             {"type":"projection","set":S}
//             {"type":"geodesic_average","lambda":l,"inner":M}
//             {"type":"composition","maps":[M,...],"fixed_set":S?}
//             {"type":"translation","shift":[...]}
//   sequence  {"law":"power","c":c,"p":p,"n0":n0} | {"law":"constant","value":v}
//             {"law":"geometric","c":c,"ratio":r} | {"law":"table","values":[...]}
//   schedule  {"alpha":SEQ,"beta":SEQ?,"perturbation":SEQ,"direction_seed":s?}
//   region    {"type":"box","lo":[...],"hi":[...]} | {"type":"hyperbolic_ball","center":P,"radius":r}
//             {"type":"tree_whole"} | {"type":"product","left":R,"right":R}
namespace hadamard::json_io {

using nlohmann::json;

json encode(const TreeTopology& topology);
TreeTopology decode_topology(const json& j, const std::string& path = "");

json encode(const SpaceDescriptor& space);
SpaceDescriptor decode_space(const json& j, const std::string& path = "");

json encode(const Point& p);
Point decode_point(const Space& space, const json& j, const std::string& path = "");

json encode(const ConvexSetDescriptor& set);
ConvexSetDescriptor decode_set(const Space& space, const json& j, const std::string& path = "");

json encode(const MappingDescriptor& map);
MappingDescriptor decode_mapping(const Space& space, const json& j, const std::string& path = "");

json encode(const Sequence& seq);
Sequence decode_sequence(const json& j, const std::string& path = "");

json encode(const Schedule& schedule);
Schedule decode_schedule(const json& j, const std::string& path = "");

json encode(const SamplingRegion& region);
SamplingRegion decode_region(const Space& space, const json& j, const std::string& path = "");

json encode(const ConditionResult& c);
json encode(const ScheduleReport& report);

// Field helpers shared with the experiment config parser.
const json& require_field(const json& j, const char* key, const std::string& path);
double require_number(const json& j, const std::string& path);
long require_integer(const json& j, const std::string& path);
std::string require_string(const json& j, const std::string& path);

}  // namespace hadamard::json_io
