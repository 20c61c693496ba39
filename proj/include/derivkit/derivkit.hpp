#pragma once

#include "derivkit/darboux.hpp"
#include "derivkit/derivation.hpp"
#include "derivkit/families.hpp"
#include "derivkit/first_order.hpp"
#include "derivkit/image_mz.hpp"
#include "derivkit/linalg.hpp"
#include "derivkit/multipoly.hpp"
#include "derivkit/parse.hpp"
#include "derivkit/rational.hpp"
#include "derivkit/residual.hpp"
#include "derivkit/roots.hpp"
#include "derivkit/simplicity.hpp"
#include "derivkit/unipoly.hpp"
