#pragma once

#include "entri/balance.hpp"
#include "entri/dataset.hpp"
#include "entri/discretize.hpp"
#include "entri/error.hpp"
#include "entri/joint.hpp"
#include "entri/linalg.hpp"
#include "entri/measures.hpp"
#include "entri/pipeline.hpp"
#include "entri/report.hpp"
#include "entri/ternary.hpp"
#include "entri/transforms.hpp"
