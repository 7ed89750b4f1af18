#!/usr/bin/env python3
# Copyright 2026 The wbgen Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the synthetic full-chain model used by the tests and sweeps.

Point masses hang off the links as fixed child links. Limb points are given
as (fraction along the link, forward offset, outward offset, share of the
limb mass). Outward offsets leave the limb plane, so the five-mass
approximation is exact only in distance at the calibration pose; the small
forward offset on the shank makes the residual grow as the leg extends.
"""

import json
import sys

HIP_WIDTH = 0.11
SHOULDER_WIDTH = 0.245
SPINE = 0.225
LEG_LINK = 0.1995
ARM_LINK = 0.17
FOOT_OFFSET = [0.0, 0.0, -0.038]
M_TRUNK = 2.373
M_ARM = 0.554
M_LEG = 1.332

# (x, z, mass) in the trunk frame, hip midpoint at the origin.
TRUNK_POINTS = [(0.004, 0.03, 0.6), (0.0, 0.11, 0.8), (0.004, 0.17, 0.6), (0.0, 0.26, 0.373)]
THIGH_POINTS = [(0.05, 0.0, 0.018, 0.25), (0.2, 0.0, 0.012, 0.12), (0.35, 0.0, 0.0, 0.08)]
SHANK_POINTS = [(0.6, 0.0, 0.0, 0.1), (0.9, 0.0043, 0.008, 0.15), (1.0, 0.0, 0.014, 0.3)]
UPPER_ARM_POINTS = [(0.1, 0.0, 0.0, 0.25), (0.4, 0.0, 0.0, 0.25), (0.7, 0.0, 0.0, 0.2)]
FOREARM_POINTS = [(0.1, 0.0, 0.0, 0.12), (0.3, 0.0, 0.0, 0.1), (0.6, 0.0, 0.0, 0.08)]

X = [1.0, 0.0, 0.0]
Y = [0.0, 1.0, 0.0]
Z = [0.0, 0.0, 1.0]
FIXED = [0.0, 0.0, 0.0]


def link(name, parent, axis=FIXED, translation=FIXED, mass=0.0):
    return {"name": name, "parent": parent, "axis": axis, "translation": translation,
            "mass": mass, "com_offset": [0.0, 0.0, 0.0]}


def points(links, parent, sign, length, spec, limb_mass):
    for i, (fraction, forward, outward, share) in enumerate(spec):
        links.append(link(f"{parent}_m{i}", parent,
                          translation=[forward, sign * outward, -fraction * length],
                          mass=share * limb_mass))


def build():
    links = [link("trunk", None)]
    for i, (x, z, m) in enumerate(TRUNK_POINTS):
        links.append(link(f"trunk_m{i}", "trunk", translation=[x, 0.0, z], mass=m))
    for side, sign in (("left", 1.0), ("right", -1.0)):
        p = side + "_"
        links.append(link(p + "hip_yaw", "trunk", Z, [0.0, sign * HIP_WIDTH / 2, 0.0]))
        links.append(link(p + "hip_roll", p + "hip_yaw", X))
        links.append(link(p + "hip_pitch", p + "hip_roll", Y))
        points(links, p + "hip_pitch", sign, LEG_LINK, THIGH_POINTS, M_LEG)
        links.append(link(p + "knee", p + "hip_pitch", Y, [0.0, 0.0, -LEG_LINK]))
        points(links, p + "knee", sign, LEG_LINK, SHANK_POINTS, M_LEG)
        links.append(link(p + "ankle_pitch", p + "knee", Y, [0.0, 0.0, -LEG_LINK]))
        links.append(link(p + "ankle_roll", p + "ankle_pitch", X))
        links.append(link(p + "foot", p + "ankle_roll", translation=FOOT_OFFSET))
    for side, sign in (("left", 1.0), ("right", -1.0)):
        p = side + "_"
        links.append(link(p + "shoulder_pitch", "trunk", Y, [0.0, sign * SHOULDER_WIDTH / 2, SPINE]))
        links.append(link(p + "shoulder_roll", p + "shoulder_pitch", X))
        links.append(link(p + "shoulder_yaw", p + "shoulder_roll", Z))
        points(links, p + "shoulder_yaw", sign, ARM_LINK, UPPER_ARM_POINTS, M_ARM)
        links.append(link(p + "elbow", p + "shoulder_yaw", Y, [0.0, 0.0, -ARM_LINK]))
        points(links, p + "elbow", sign, ARM_LINK, FOREARM_POINTS, M_ARM)
        links.append(link(p + "wrist", p + "elbow", translation=[0.0, 0.0, -ARM_LINK]))
    return {"name": "synthetic", "links": links}


def main():
    for spec in (THIGH_POINTS + SHANK_POINTS, UPPER_ARM_POINTS + FOREARM_POINTS):
        assert abs(sum(p[-1] for p in spec) - 1.0) < 1e-12
    assert abs(sum(m for _, _, m in TRUNK_POINTS) - M_TRUNK) < 1e-12
    text = json.dumps(build(), indent=2) + "\n"
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
