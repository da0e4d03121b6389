#pragma once

#include "scalar.hpp"
#include "group.hpp"
#include "cohomology.hpp"
#include "linalg.hpp"
#include "ydmod.hpp"
#include "nichols.hpp"
#include "rootsys.hpp"
#include "classify.hpp"
#include "instance.hpp"
#include "cli.hpp"
