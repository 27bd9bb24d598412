#pragma once

#include "seroinv/algebra.hpp"
#include "seroinv/config.hpp"
#include "seroinv/counts.hpp"
#include "seroinv/dataset.hpp"
#include "seroinv/errors.hpp"
#include "seroinv/estimator.hpp"
#include "seroinv/exact.hpp"
#include "seroinv/fit_oracle.hpp"
#include "seroinv/model.hpp"
#include "seroinv/pipeline.hpp"
#include "seroinv/report.hpp"
