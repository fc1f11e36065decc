#pragma once

#include "qfermion/scalar.hpp"
#include "qfermion/clifford.hpp"
#include "qfermion/fock.hpp"
#include "qfermion/tensor.hpp"
#include "qfermion/relation.hpp"
#include "qfermion/qgroup.hpp"
#include "qfermion/homs.hpp"
#include "qfermion/spectra.hpp"
#include "qfermion/serialization.hpp"
#include "qfermion/report.hpp"
