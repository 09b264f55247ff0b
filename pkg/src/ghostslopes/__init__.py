"""Ghost series of primitive modules, their Newton polygons at points of the
open unit disk, and the direct-sum slope criteria, in exact arithmetic."""
from .padic import PrimeContext, Valuation, dig, vp, vp_range_sum
from .chars import (EpsilonChar, WeightK, WStarProfile, companion, companion_pair, format_profile,
                    format_rational, iota, iota_inv, is_related, parse_profile, parse_profile_family,
                    profile_eval, s_set, wdist)
from .dims import (ModuleSpec, SParam, beta, d_dagger, d_iw, d_ur, parse_spec, spec_dims,
                   spec_from_rbar, table_row)
from .ghost import (GhostCoefficient, GhostSeries, coefficient, eval_at_wk_hat, eval_valuations,
                    m_exp, series)
from .newton import (NewtonPolygon, UnconfirmedRangeError, confirmed_prefix, ghost_polygon, h_values,
                     lower_hull, merge, merge_all, np_equal_upto, np_from_points, np_from_values, stretch)
from .zigzag import (CompareVerdict, Partition, direct_sum_compare, factorization_check,
                     is_odd_dominant, partition, theorem_condition, witness_search, zigzag_check)
from .delta import (DeltaTable, NearSteinberg, ab_values, d_new, delta_hull, delta_increment,
                    delta_prime, f_value, near_steinberg, p_kl, s_kl, slope_hypothesis, theta,
                    theta_closed)

__version__ = "0.1.0"
