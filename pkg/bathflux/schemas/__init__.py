from bathflux.schemas.numerics import EigenSystem, FitResult, QuadratureEstimate, Trig, EnvelopeLaw
from bathflux.schemas.chain import (
    ChainFamily, PstNormalization, ChainConfig, InitialCase, AmplitudeRow, ChainFactors
)
from bathflux.schemas.bath import (
    LorentzDrude, Ohmic, WhiteNoise, BathSpectrum, KernelKind, ConvergenceClass,
    ThermalParams, Divergent
)
from bathflux.schemas.model import (
    EvaluationMode, JtiVariant, RatioVariant, ModelSpec, CurrentSample, ScanResult,
    ConsistencyReport
)
from bathflux.schemas.run import GridSpec, SweepSpec, OutputSpec, RunConfig
from bathflux.schemas.validation import ValidationLevel, CheckResult
