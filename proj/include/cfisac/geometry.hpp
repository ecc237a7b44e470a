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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfisac/config.hpp"
#include "cfisac/rng.hpp"

namespace cfisac
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2 &, const Point2 &) = default;
};

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    friend bool operator==(const Point3 &, const Point3 &) = default;
};

// Node positions in metres on the wrap-around square [0, side)^2.
struct Topology
{
    std::vector<Point2> cap_pos;
    std::vector<Point2> sap_tx_pos;
    std::vector<Point2> sap_rx_pos;
    std::vector<Point2> ue_pos;
    Point2 monitor_pos;
    double monitor_angle_rad = 0.0; // placement angle around UE 1
    Point3 target_pos;
    double side_m = 1000.0;

    friend bool operator==(const Topology &, const Topology &) = default;
};

struct Angles
{
    double azimuth = 0.0;   // (-pi, pi]
    double elevation = 0.0; // [0, pi/2]
};

class GeometryError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

using SteeringVector = Eigen::VectorXcd;

// APs and UEs uniform on the square, monitor uniform on the circle of radius r around
// UE 1 (wrapped back into the square), target uniform at height h.
Topology draw_topology(const SystemConfig &cfg, Rng &rng);

// Wrapped (shortest) signed delta to - from along one axis.
double wrap_delta(double from, double to, double side);

double torus_distance_2d(Point2 a, Point2 b, double side);

// Horizontal part on the torus, vertical part from the target height.
double distance_3d_to_target(Point2 ap, Point3 target, double side);

Angles departure_angles(Point2 ap, Point3 target, double side);

// Uniform linear array along x: entry n (0-based) = exp(j 2 pi spacing n sin(az) cos(el)).
SteeringVector steering_vector(double azimuth, double elevation, int n_ant, double spacing_ratio = 0.5);

std::string to_json(const Topology &topo, int indent = 2);
Topology topology_from_json(const std::string &text);

} // namespace cfisac
