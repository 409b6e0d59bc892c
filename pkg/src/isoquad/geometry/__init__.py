"""Places of Q_p(t), chart substitutions, local-global reports and pencils."""

from .places import (ChartMap, Localized, Place, QptCompletion, horizontal, infinity,
                     parse_chart, qrf_localize, special_fibre)
from .report import (GoodPlaceRecord, LocalGlobalReport, auto_probes, completion_verdict,
                     enumerate_bad_places, good_place_rule, local_global_report, substitute)

__all__ = [
    "ChartMap", "Localized", "Place", "QptCompletion", "horizontal", "infinity", "parse_chart",
    "qrf_localize", "special_fibre", "GoodPlaceRecord", "LocalGlobalReport", "auto_probes",
    "completion_verdict", "enumerate_bad_places", "good_place_rule", "local_global_report",
    "substitute",
]
