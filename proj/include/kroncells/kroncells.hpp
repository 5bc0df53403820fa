#pragma once

#include "core.hpp"
#include "linalg.hpp"
#include "kronrep.hpp"
#include "covering.hpp"
#include "layout.hpp"
#include "dyck.hpp"
#include "twoquiver.hpp"
#include "poly.hpp"
#include "cells.hpp"
#include "oracle.hpp"
