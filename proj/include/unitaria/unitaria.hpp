// Umbrella header.
#pragma once

#include "unitaria/bernoulli.hpp"
#include "unitaria/bigfloat.hpp"
#include "unitaria/cache.hpp"
#include "unitaria/dirichlet.hpp"
#include "unitaria/domain.hpp"
#include "unitaria/eisenstein.hpp"
#include "unitaria/field_elem.hpp"
#include "unitaria/finite_unitary.hpp"
#include "unitaria/hecke.hpp"
#include "unitaria/hermitian_space.hpp"
#include "unitaria/json_io.hpp"
#include "unitaria/maass.hpp"
#include "unitaria/matrix.hpp"
#include "unitaria/primes.hpp"
#include "unitaria/qexp.hpp"
#include "unitaria/rational.hpp"
