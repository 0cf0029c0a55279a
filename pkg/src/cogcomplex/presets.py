"""The five reference scenarios built on a calibration."""

from __future__ import annotations

from .calibration import Calibration
from .scenarios import Scenario, SuddenLoss, SustainedLoss

SUDDEN_LOSS = SuddenLoss(month=600.0, fraction=0.05)
SUSTAINED_LOSS = SustainedLoss(start_month=300.0, monthly_rate=0.0005)


def reference_scenarios(cal: Calibration) -> dict[str, Scenario]:
    horizon = cal.targets.horizon
    baseline = Scenario(cal.growth, cal.linear_mode, (), "baseline", horizon)
    weakened = Scenario(cal.growth, cal.double_mode, (), "exp-weaken", horizon)
    return {
        "baseline": baseline,
        "sudden": Scenario(cal.growth, cal.linear_mode, (SUDDEN_LOSS,), "sudden-5%@600", horizon),
        "exp-weaken": weakened,
        "combined": Scenario(cal.growth, cal.double_mode, (SUDDEN_LOSS,), "combined", horizon),
        "sustained": Scenario(cal.growth, cal.linear_mode, (SUSTAINED_LOSS,), "sustained-0.05%@300", horizon),
    }
