#pragma once

#include "lieinv/algebra.hpp"
#include "lieinv/cocycles.hpp"
#include "lieinv/config.hpp"
#include "lieinv/duality.hpp"
#include "lieinv/identities.hpp"
#include "lieinv/index.hpp"
#include "lieinv/io.hpp"
#include "lieinv/report.hpp"
#include "lieinv/suite.hpp"
#include "lieinv/sparse_tensor.hpp"
#include "lieinv/symmetrize.hpp"
#include "lieinv/tensors.hpp"
#include "lieinv/towers.hpp"
#include "lieinv/ttensors.hpp"
