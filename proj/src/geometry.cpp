// SPDX-License-Identifier: Apache-2.0
//
// cfisac: cell-free ISAC simulator with a proactive monitor
// Copyright (C) 2026 The cfisac authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cfisac/geometry.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace cfisac
{

namespace
{

double wrap_into(double v, double side)
{
    double w = std::fmod(v, side);
    if (w < 0.0)
        w += side;
    return w;
}

std::vector<Point2> uniform_points(int n, double side, Rng &rng)
{
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<Point2> pts(static_cast<std::size_t>(n));
    for (auto &p : pts)
    {
        p.x = u(rng);
        p.y = u(rng);
    }
    return pts;
}

} // namespace

Topology draw_topology(const SystemConfig &cfg, Rng &rng)
{
    Topology t;
    t.side_m = cfg.area_side_m();
    t.cap_pos = uniform_points(cfg.n_cap, t.side_m, rng);
    t.sap_tx_pos = uniform_points(cfg.n_sap_tx, t.side_m, rng);
    t.sap_rx_pos = uniform_points(cfg.n_sap_rx, t.side_m, rng);
    t.ue_pos = uniform_points(cfg.n_ue, t.side_m, rng);

    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    t.monitor_angle_rad = ang(rng);
    const Point2 ue1 = t.ue_pos.front();
    t.monitor_pos = {wrap_into(ue1.x + cfg.monitor_radius_m * std::cos(t.monitor_angle_rad), t.side_m),
                     wrap_into(ue1.y + cfg.monitor_radius_m * std::sin(t.monitor_angle_rad), t.side_m)};

    std::uniform_real_distribution<double> u(0.0, t.side_m);
    t.target_pos.x = u(rng);
    t.target_pos.y = u(rng);
    t.target_pos.z = cfg.target_height_m;
    return t;
}

double wrap_delta(double from, double to, double side)
{
    double d = std::fmod(to - from, side);
    if (d > 0.5 * side)
        d -= side;
    else if (d < -0.5 * side)
        d += side;
    return d;
}

double torus_distance_2d(Point2 a, Point2 b, double side)
{
    return std::hypot(wrap_delta(a.x, b.x, side), wrap_delta(a.y, b.y, side));
}

double distance_3d_to_target(Point2 ap, Point3 target, double side)
{
    return std::hypot(torus_distance_2d(ap, {target.x, target.y}, side), target.z);
}

Angles departure_angles(Point2 ap, Point3 target, double side)
{
    const double dx = wrap_delta(ap.x, target.x, side);
    const double dy = wrap_delta(ap.y, target.y, side);
    const double horizontal = std::hypot(dx, dy);
    if (horizontal == 0.0 && target.z == 0.0)
        throw GeometryError("departure_angles: target coincides with the AP");
    Angles a;
    a.azimuth = std::atan2(dy, dx);
    if (a.azimuth == -std::numbers::pi)
        a.azimuth = std::numbers::pi;
    a.elevation = std::atan2(std::abs(target.z), horizontal);
    return a;
}

SteeringVector steering_vector(double azimuth, double elevation, int n_ant, double spacing_ratio)
{
    if (n_ant < 1)
        throw std::invalid_argument("steering_vector: n_ant must be >= 1");
    const double step = 2.0 * std::numbers::pi * spacing_ratio * std::sin(azimuth) * std::cos(elevation);
    SteeringVector v(n_ant);
    for (int n = 0; n < n_ant; ++n)
        v(n) = std::polar(1.0, step * n);
    return v;
}

namespace
{

nlohmann::ordered_json points_json(const std::vector<Point2> &pts)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto &p : pts)
        arr.push_back({p.x, p.y});
    return arr;
}

std::vector<Point2> points_from(const nlohmann::ordered_json &arr)
{
    std::vector<Point2> pts;
    for (const auto &p : arr)
        pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return pts;
}

} // namespace

std::string to_json(const Topology &topo, int indent)
{
    nlohmann::ordered_json j;
    j["side_m"] = topo.side_m;
    j["cap_pos"] = points_json(topo.cap_pos);
    j["sap_tx_pos"] = points_json(topo.sap_tx_pos);
    j["sap_rx_pos"] = points_json(topo.sap_rx_pos);
    j["ue_pos"] = points_json(topo.ue_pos);
    j["monitor_pos"] = {topo.monitor_pos.x, topo.monitor_pos.y};
    j["monitor_angle_rad"] = topo.monitor_angle_rad;
    j["target_pos"] = {topo.target_pos.x, topo.target_pos.y, topo.target_pos.z};
    return j.dump(indent);
}

Topology topology_from_json(const std::string &text)
{
    const auto j = nlohmann::ordered_json::parse(text);
    Topology t;
    t.side_m = j.at("side_m").get<double>();
    t.cap_pos = points_from(j.at("cap_pos"));
    t.sap_tx_pos = points_from(j.at("sap_tx_pos"));
    t.sap_rx_pos = points_from(j.at("sap_rx_pos"));
    t.ue_pos = points_from(j.at("ue_pos"));
    t.monitor_pos = {j.at("monitor_pos").at(0).get<double>(), j.at("monitor_pos").at(1).get<double>()};
    t.monitor_angle_rad = j.at("monitor_angle_rad").get<double>();
    const auto &tp = j.at("target_pos");
    t.target_pos = {tp.at(0).get<double>(), tp.at(1).get<double>(), tp.at(2).get<double>()};
    return t;
}

} // namespace cfisac
