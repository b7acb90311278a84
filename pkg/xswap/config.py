""" This is a configuration file """

""" Numerical tolerances - change with care, tests are calibrated on them """
# default absolute tolerance wherever no other tolerance is given
ATOL = 1e-10
# eigenvalues below this are treated as zero before square roots
EIGEN_FLOOR = 1e-14
# an outcome with a smaller probability has no conditional state
PROBABILITY_FLOOR = 1e-14
# max deviation accepted when comparing closed forms with the oracle
VERIFY_BOUND = 1e-9
# max entry deviation for two outcome states to count as related by a local unitary
EQUIVALENCE_BOUND = 1e-12
# bisection stops once the onset bracket is narrower than this
ONSET_TOL = 1e-12

""" Parameter sweeps """
# available families for sweeps
FAMILIES = ["pure", "werner", "alpha", "beta"]
# default number of grid points (inclusive grid)
DEFAULT_POINTS = 201
# CSV columns for each family, in output order
SWEEP_COLUMNS = {
    "pure": ["a", "E_in", "E_phi_out", "E_psi_out", "E_avg", "p_phi", "p_psi"],
    "werner": ["param", "C_in", "C_out_phi", "C_out_psi", "C_th_min", "C_th_max", "regime"],
    "alpha": ["param", "C_in", "C_out_phi", "C_out_psi", "C_th_min", "C_th_max", "regime"],
    "beta": ["param", "C_in", "C_out_phi", "C_out_psi", "C_th_min", "C_th_max", "regime"],
}
# 17 significant digits for bit-faithful round trips
CSV_FLOAT_FORMAT = "%.17g"

""" Random sampling and verification """
# default seed for sampling and verification runs
SEED = 105
# rejection sampling gives up after this many draws for a single state
SAMPLER_MAX_DRAWS = 100000
SAMPLE_CONSTRAINTS = ["any", "separable", "entangled"]
# default number of cases for the verify command
DEFAULT_VERIFY_CASES = 1000

""" Workers """
# joblib workers for sweeps and verification, 1 means sequential
N_JOBS = 1

""" Command line """
EXIT_CODES = {
    "success": 0,
    "verification": 1,
    "parse": 2,
    "invalid_state": 3,
    "io": 4,
    "sampler_cap": 5,
}
OUTPUT_FORMATS = ["text", "machine"]
