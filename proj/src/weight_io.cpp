#include "bergkern/weight_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bergkern/zeros.hpp"

namespace bergkern {

using nlohmann::json;

RadialWeight weight_from_json(const json& j)
{
   try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "constant")
         return RadialWeight::constant(j.value("value", 1.0));
      if (type == "step") {
         std::vector<StepSegment> segments;
         for (const auto& s : j.at("segments")) {
            if (!s.is_array() || s.size() != 2)
               throw std::invalid_argument("step segment must be [breakpoint, value]");
            segments.push_back({s[0].get<double>(), s[1].get<double>()});
         }
         return RadialWeight::step(std::move(segments));
      }
      if (type == "sampled")
         return RadialWeight::sampled(j.at("radii").get<std::vector<double>>(),
                                      j.at("values").get<std::vector<double>>());
      if (type == "dirac")
         return RadialWeight::dirac(j.at("mass").get<double>());
      if (type == "mollified")
         return mollify_weight(weight_from_json(j.at("step")), j.at("width").get<double>());
      throw std::invalid_argument("unknown weight type '" + type + "'");
   } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("malformed weight definition: ") + e.what());
   }
}

json weight_to_json(const RadialWeight& weight)
{
   return std::visit(
      [](const auto& w) -> json {
         using T = std::decay_t<decltype(w)>;
         if constexpr (std::is_same_v<T, ConstantWeight>) {
            return {{"type", "constant"}, {"value", w.value}};
         } else if constexpr (std::is_same_v<T, StepWeight>) {
            json segs = json::array();
            for (const auto& s : w.segments)
               segs.push_back({s.breakpoint, s.value});
            return {{"type", "step"}, {"segments", segs}};
         } else if constexpr (std::is_same_v<T, SampledWeight>) {
            return {{"type", "sampled"}, {"radii", w.radii}, {"values", w.values}};
         } else {
            return {{"type", "dirac"}, {"mass", w.mass}};
         }
      },
      weight.variant());
}

RadialWeight load_weight(const std::string& path_or_name)
{
   if (path_or_name == "constant1")
      return RadialWeight::constant(1.0);
   std::ifstream in(path_or_name);
   if (!in)
      throw std::invalid_argument("cannot open weight file '" + path_or_name + "'");
   json j;
   try {
      in >> j;
   } catch (const json::exception& e) {
      throw std::invalid_argument("weight file '" + path_or_name + "' is not valid JSON: " + e.what());
   }
   return weight_from_json(j);
}

RadialWeight parse_step_shorthand(const std::string& text)
{
   std::istringstream is(text);
   double height = 0.0;
   double radius = 0.0;
   char comma = 0;
   if (!(is >> height >> comma >> radius) || comma != ',' || !(is >> std::ws).eof())
      throw std::invalid_argument("--step expects A,x (got '" + text + "')");
   return RadialWeight::step(height, radius);
}

} // namespace bergkern
