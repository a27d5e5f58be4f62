//! Named instances and suites for `infsum check`.

use infsum_core::extreal::{Biproduct, Dyadics, ExtNatMax, ExtNats, FiniteLattice, LowerReals};
use infsum_core::magnitude::{zeno_suite_extnat, zeno_suite_extreal, zeno_suite_lattice};
use infsum_core::rig::PMonoid;
use infsum_core::series::harness::{run_suite, HarnessConfig, Report, Suite};

pub const INSTANCES: [&str; 10] =
    ["extnat", "extreal", "dyadic", "extnat-max", "bool", "chain3", "subsets2", "extnat2", "P@nat", "P@dyadic"];

pub const SUITES: [&str; 8] = ["zerodiag", "sumswap", "reindex", "perm", "binary", "laws", "idempotent", "zeno"];

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("unknown instance {0:?} (known: {known})", known = INSTANCES.join(", "))]
    UnknownInstance(String),
    #[error("unknown suite {0:?} (known: {known})", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("no zeno suite for {0}; it exists for extnat, extreal and the lattices")]
    NoZeno(String),
}

fn lattice(name: &str) -> Option<FiniteLattice> {
    match name {
        "bool" => Some(FiniteLattice::boolean()),
        "chain3" => Some(FiniteLattice::chain("chain3", 3)),
        "subsets2" => Some(FiniteLattice::powerset("subsets2", 2)),
        _ => None,
    }
}

pub fn run(instance: &str, suite: &str, config: HarnessConfig) -> Result<Report, CheckError> {
    if !INSTANCES.contains(&instance) {
        return Err(CheckError::UnknownInstance(instance.into()));
    }
    if suite == "zeno" {
        return match instance {
            "extreal" => Ok(zeno_suite_extreal(config)),
            "extnat" => Ok(zeno_suite_extnat(config)),
            _ => lattice(instance)
                .map(|l| zeno_suite_lattice(&l, config))
                .ok_or_else(|| CheckError::NoZeno(instance.into())),
        };
    }
    let suite: Suite = suite.parse().map_err(|_| CheckError::UnknownSuite(suite.into()))?;
    Ok(match instance {
        "extnat" => run_suite(&ExtNats, suite, config),
        "extreal" => run_suite(&LowerReals, suite, config),
        "dyadic" => run_suite(&Dyadics, suite, config),
        "extnat-max" => run_suite(&ExtNatMax, suite, config),
        "extnat2" => run_suite(&Biproduct::new(vec![ExtNats, ExtNats]), suite, config),
        "P@nat" => run_suite(&PMonoid::new(ExtNats), suite, config),
        "P@dyadic" => run_suite(&PMonoid::new(Dyadics), suite, config),
        name => run_suite(&lattice(name).expect("listed instance"), suite, config),
    })
}

/// 0 when everything passed (or failed as expected), 1 on failures,
/// 3 when the only shortfall is inconclusive cases.
pub fn exit_code(report: &Report) -> u8 {
    if report.expected_negative.is_some() {
        0
    } else if report.fail > 0 || report.invalid > 0 {
        1
    } else if report.inconclusive > 0 {
        3
    } else {
        0
    }
}
