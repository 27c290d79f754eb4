//! The named-check registry and the suite job builder.

use nccb_core::error::AlgebraError;
use nccb_core::identities::{
    realize_capelli, realize_weyl_example, verify_berezin_calibration, verify_cauchy_binet_quantum,
    verify_cbh, verify_cross_representation, verify_direct_grassmann, verify_grassmann_rep,
    verify_holomorphic_coldet, verify_lem_faf, verify_lukasiewicz_agreement, verify_multilin,
    verify_oracle_independence, verify_oscillator_rep, verify_prop_old, verify_support_lemmas,
    Status, VerificationResult,
};
use nccb_core::ncdet::DetVariant;
use nccb_core::ring::{rat, ratio, Rational};
use nccb_core::series::TruncSeries;

pub const IDENTITY_NAMES: &[&str] = &[
    "capelli",
    "oscillator",
    "grassmann",
    "holomorphic",
    "prop_old",
    "multilin",
    "lem_faf",
    "cbh",
    "direct_grassmann",
    "support_lemmas",
    "cross_representation",
    "lukasiewicz",
    "berezin",
    "oracles",
];

/// Desk-scale bounds; configurations beyond them are usage errors.
pub const MAX_N: usize = 3;
pub const MAX_M: usize = 4;
pub const MAX_S_DIM: usize = 2;
pub const MAX_CBH_ORDER: usize = 8;
pub const MAX_PATHS_LEN: usize = 8;

pub const DEFAULT_SEED: u64 = 20090401;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub identities: Vec<String>,
    pub n_max: usize,
    pub m_max: usize,
    pub s_dim_max: usize,
    pub cbh_order: usize,
    pub paths_len: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            identities: IDENTITY_NAMES.iter().map(|s| s.to_string()).collect(),
            n_max: 3,
            m_max: 4,
            s_dim_max: 2,
            cbh_order: 6,
            paths_len: 6,
            seed: DEFAULT_SEED,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), String> {
        for name in &self.identities {
            if !IDENTITY_NAMES.contains(&name.as_str()) {
                return Err(format!(
                    "unknown identity {name:?}; known: {}",
                    IDENTITY_NAMES.join(", ")
                ));
            }
        }
        if self.n_max == 0 || self.n_max > MAX_N {
            return Err(format!("n must lie in 1..={MAX_N}"));
        }
        if self.m_max < self.n_max || self.m_max > MAX_M {
            return Err(format!("m must lie in n..={MAX_M}"));
        }
        if self.s_dim_max == 0 || self.s_dim_max > MAX_S_DIM {
            return Err(format!("s-dim must lie in 1..={MAX_S_DIM}"));
        }
        if self.cbh_order == 0 || self.cbh_order > MAX_CBH_ORDER {
            return Err(format!("cbh order must lie in 1..={MAX_CBH_ORDER}"));
        }
        if self.paths_len == 0 || self.paths_len > MAX_PATHS_LEN {
            return Err(format!("paths length must lie in 1..={MAX_PATHS_LEN}"));
        }
        Ok(())
    }

    fn weyl_grid(&self) -> Vec<(usize, usize, usize)> {
        let mut grid = Vec::new();
        for n in 1..=self.n_max {
            for m in n..=self.m_max {
                for s in 1..=self.s_dim_max {
                    grid.push((n, m, s));
                }
            }
        }
        grid
    }
}

pub type Job = Box<dyn FnOnce() -> Result<VerificationResult, AlgebraError> + Send>;

/// Short polynomial series used across the substitution and CBH checks.
pub fn series_one_minus_a(order: usize) -> TruncSeries<Rational> {
    TruncSeries::from_poly(&[rat(1), rat(-1)], order)
}

pub fn series_one_minus_a_plus_half_a2(order: usize) -> TruncSeries<Rational> {
    TruncSeries::from_poly(&[rat(1), rat(-1), ratio(1, 2)], order)
}

/// Expand one identity name into its grid of jobs.
pub fn jobs_for(name: &str, cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    match name {
        "capelli" => {
            for n in 1..=cfg.n_max {
                for variant in [DetVariant::Col, DetVariant::Row] {
                    jobs.push(Box::new(move || {
                        verify_cauchy_binet_quantum(&realize_capelli(n), variant)
                    }));
                }
            }
        }
        "oscillator" => {
            for (n, m, s) in cfg.weyl_grid() {
                for variant in [DetVariant::Col, DetVariant::Row] {
                    jobs.push(Box::new(move || {
                        verify_oscillator_rep(&realize_weyl_example(n, m, s)?, variant, None)
                    }));
                }
            }
        }
        "grassmann" => {
            for (n, m, s) in cfg.weyl_grid() {
                for variant in [DetVariant::Col, DetVariant::Row] {
                    jobs.push(Box::new(move || {
                        verify_grassmann_rep(&realize_weyl_example(n, m, s)?, variant)
                    }));
                }
            }
        }
        "holomorphic" => {
            for n in 1..=cfg.n_max {
                jobs.push(Box::new(move || {
                    verify_holomorphic_coldet(&realize_capelli(n))
                }));
            }
            for (n, m, s) in cfg.weyl_grid() {
                jobs.push(Box::new(move || {
                    verify_holomorphic_coldet(&realize_weyl_example(n, m, s)?)
                }));
            }
        }
        "prop_old" => {
            for n in 1..=cfg.n_max {
                jobs.push(Box::new(move || verify_prop_old(n)));
            }
        }
        "multilin" => {
            let seed = cfg.seed;
            for n in 1..=cfg.n_max {
                for k in 1..=2usize {
                    for f_choice in 0..2usize {
                        for s_choice in 0..4usize {
                            jobs.push(Box::new(move || {
                                let order = (n * k).max(2);
                                let f = if f_choice == 0 {
                                    series_one_minus_a(order)
                                } else {
                                    series_one_minus_a_plus_half_a2(order)
                                };
                                let s = match s_choice {
                                    0 => Some(rat(0)),
                                    1 => Some(rat(1)),
                                    2 => Some(rat(2)),
                                    _ => None, // symbolic
                                };
                                verify_multilin(n, k, &f, s, seed)
                            }));
                        }
                    }
                }
            }
        }
        "lem_faf" => {
            for f_choice in 0..2usize {
                jobs.push(Box::new(move || {
                    let f = if f_choice == 0 {
                        series_one_minus_a(8)
                    } else {
                        series_one_minus_a_plus_half_a2(8)
                    };
                    verify_lem_faf(&f, 3, 3)
                }));
            }
        }
        "cbh" => {
            let order = cfg.cbh_order;
            // f ∈ {a, a², 1 + a + a³}
            for f_choice in 0..3usize {
                jobs.push(Box::new(move || {
                    let f = match f_choice {
                        0 => TruncSeries::from_poly(&[rat(0), rat(1)], 3),
                        1 => TruncSeries::from_poly(&[rat(0), rat(0), rat(1)], 3),
                        _ => TruncSeries::from_poly(&[rat(1), rat(1), rat(0), rat(1)], 3),
                    };
                    verify_cbh(&f, order)
                }));
            }
        }
        "direct_grassmann" => {
            for n in 1..=cfg.n_max {
                jobs.push(Box::new(move || {
                    verify_direct_grassmann(&realize_capelli(n))
                }));
            }
        }
        "support_lemmas" => {
            for n in 1..=cfg.n_max {
                jobs.push(Box::new(move || {
                    verify_support_lemmas(&realize_capelli(n))
                }));
            }
            for (n, m, s) in cfg.weyl_grid() {
                jobs.push(Box::new(move || {
                    verify_support_lemmas(&realize_weyl_example(n, m, s)?)
                }));
            }
        }
        "cross_representation" => {
            for n in 1..=cfg.n_max {
                jobs.push(Box::new(move || {
                    verify_cross_representation(&realize_capelli(n))
                }));
            }
            for (n, m, s) in cfg.weyl_grid() {
                jobs.push(Box::new(move || {
                    verify_cross_representation(&realize_weyl_example(n, m, s)?)
                }));
            }
        }
        "lukasiewicz" => {
            let len = cfg.paths_len;
            let seed = cfg.seed;
            jobs.push(Box::new(move || {
                verify_lukasiewicz_agreement(len, 8, 1000, seed)
            }));
        }
        "berezin" => {
            let seed = cfg.seed;
            jobs.push(Box::new(move || verify_berezin_calibration(100, seed)));
        }
        "oracles" => {
            let seed = cfg.seed;
            jobs.push(Box::new(move || {
                verify_oracle_independence(1000, 8, 500, seed)
            }));
        }
        _ => {}
    }
    jobs
}

/// Run a batch of jobs, optionally in parallel, converting errors into
/// failing results so the report stays total.
pub fn run_jobs(jobs: Vec<(String, Job)>, threads: Option<usize>) -> Vec<VerificationResult> {
    use rayon::prelude::*;
    let run_one = |(name, job): (String, Job)| -> VerificationResult {
        match job() {
            Ok(res) => res,
            Err(err) => VerificationResult {
                identity: name,
                params: Default::default(),
                status: Status::Fail,
                lhs_terms: 0,
                rhs_terms: 0,
                first_discrepancy: Some(err.to_string()),
                elapsed: Default::default(),
            },
        }
    };
    match threads {
        Some(1) => jobs.into_iter().map(run_one).collect(),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("thread pool");
            pool.install(|| jobs.into_par_iter().map(run_one).collect())
        }
        None => jobs.into_par_iter().map(run_one).collect(),
    }
}
