//! Command execution: resolve the configured pair, run the requested
//! computation, and emit records. Every failure becomes an `error` record
//! with a stable code; the process exits 0 exactly when no error record
//! was emitted.

use std::fs;

use gindex_core::charlib::{branch_to_compact, irreducible_character, weyl_dimension};
use gindex_core::diracindex::{arithmetic_index, euler_index, g_index, OperatorKind, TauSpec};
use gindex_core::orbital::{euler_character_vanishing, orbital_f_sigma, orbital_g_tau};
use gindex_core::rootdata::{Basis, Weight};
use gindex_core::suite::identity_suite;
use gindex_core::sympair::{SymmetricPair, TorsionElement};
use gindex_core::Nat;

use crate::cache;
use crate::config::{self, ArithConfig, Config, ElementConfig, TauConfig};
use crate::errors::{CliError, Result};
use crate::records::{
    coords_str, rat_str, BranchTermRecord, CharDimRecord, ConstantsValue, CycloValue,
    ErrorRecord, IndexArithRecord, IndexEulerRecord, IndexGRecord, OrbitalRecord,
    PairSummaryRecord, Record, RootsysInfoRecord, SuiteEntryRecord, WeylOrderRecord,
    NORMALIZATION,
};
use crate::{Args, CommandName, Format};

pub(crate) fn run(args: &Args) -> i32 {
    let command = args.command.name();
    let mut recs: Vec<Record> = Vec::new();
    collect(args, command, &mut recs);

    let mut body = String::new();
    match args.format {
        Format::Records => {
            for r in &recs {
                body.push_str(&r.to_json());
                body.push('\n');
            }
        }
        Format::Table => {
            for (i, r) in recs.iter().enumerate() {
                if i > 0 {
                    body.push('\n');
                }
                for line in r.table_block() {
                    body.push_str(&line);
                    body.push('\n');
                }
            }
        }
    }
    let write_failed = match &args.out {
        Some(path) => fs::write(path, &body)
            .map_err(|e| eprintln!("cannot write {}: {e}", path.display()))
            .is_err(),
        None => {
            print!("{body}");
            false
        }
    };
    if write_failed || recs.iter().any(Record::is_error) {
        1
    } else {
        0
    }
}

fn push_err(recs: &mut Vec<Record>, command: &str, pair: Option<&str>, e: &CliError) {
    recs.push(Record::Error(ErrorRecord {
        record: "error",
        command: command.to_string(),
        pair: pair.map(str::to_string),
        normalization: NORMALIZATION,
        code: e.code().to_string(),
        message: e.to_string(),
    }));
}

fn collect(args: &Args, command: &str, recs: &mut Vec<Record>) {
    let cfg = match load_config(args) {
        Ok(cfg) => cfg,
        Err(e) => return push_err(recs, command, None, &e),
    };
    let (pair, name) = match config::resolve_pair(&cfg) {
        Ok(ok) => ok,
        Err(e) => return push_err(recs, command, None, &e),
    };
    let (tau_cfg, elem_cfg) = config::materialize(&cfg, pair.root_system().rank());
    let job = Job {
        args,
        command,
        cfg: &cfg,
        pair: &pair,
        name: &name,
        tau_cfg,
        elem_cfg,
    };
    if let Err(e) = job.dispatch(recs) {
        push_err(recs, command, Some(&name), &e);
    }
}

fn load_config(args: &Args) -> Result<Config> {
    let Some(path) = &args.config else {
        return Err(CliError::Usage(
            "every command reads its pair from --config".to_string(),
        ));
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(e.to_string()))?;
    config::parse_config(&text)
}

struct Job<'a> {
    args: &'a Args,
    command: &'a str,
    cfg: &'a Config,
    pair: &'a SymmetricPair,
    name: &'a str,
    tau_cfg: TauConfig,
    elem_cfg: ElementConfig,
}

impl Job<'_> {
    fn dispatch(&self, recs: &mut Vec<Record>) -> Result<()> {
        match self.args.command {
            CommandName::RootsysInfo => self.rootsys_info(recs),
            CommandName::WeylOrder => self.weyl_order(recs),
            CommandName::CharDim => self.char_dim(recs),
            CommandName::CharBranch => self.char_branch(recs),
            CommandName::PairValidate => self.pair_validate(recs),
            CommandName::IndexG => self.index_g(recs),
            CommandName::IndexEuler => self.index_euler(recs),
            CommandName::IndexArith => self.index_arith(recs),
            CommandName::OrbitalEval => self.orbital_eval(recs),
            CommandName::IdentitySuite => self.identity_suite(recs),
        }
    }

    fn tau_weight(&self) -> Weight {
        Weight::new(self.tau_cfg.weight.clone(), Basis::FundamentalWeight)
    }

    fn tau_spec(&self) -> Result<TauSpec> {
        Ok(TauSpec::new("tau", &self.tau_weight(), self.pair)?)
    }

    fn rootsys_info(&self, recs: &mut Vec<Record>) -> Result<()> {
        let rs = self.pair.root_system();
        recs.push(Record::RootsysInfo(RootsysInfoRecord {
            record: "rootsys-info",
            command: self.command.to_string(),
            pair: self.name.to_string(),
            normalization: NORMALIZATION,
            cartan_type: rs.cartan_type().to_string(),
            rank: rs.rank() as u64,
            positive_roots: rs.num_positive() as u64,
            compact_positive_roots: self.pair.compact_positive().len() as u64,
            noncompact_positive_roots: self.pair.noncompact_positive().len() as u64,
            weyl_order: rs.weyl_order().to_string(),
            compact_weyl_order: self.pair.compact_subsystem().weyl_order(rs).to_string(),
            dual_euler_characteristic: self.pair.chi_dual().to_string(),
        }));
        Ok(())
    }

    fn weyl_order(&self, recs: &mut Vec<Record>) -> Result<()> {
        let rs = self.pair.root_system();
        let ty = rs.cartan_type().to_string();
        let order = rs.weyl_order();
        let fits = order <= Nat::from(self.args.order_cap);
        let enumerated = if fits {
            let matrices = match &self.args.cache_dir {
                Some(dir) => match cache::load_weyl(dir, &ty)? {
                    Some(m) => m,
                    None => {
                        let m = self.enumerate()?;
                        cache::store_weyl(dir, &ty, &m)?;
                        m
                    }
                },
                None => self.enumerate()?,
            };
            Some(matrices.len().to_string())
        } else {
            None
        };
        recs.push(Record::WeylOrder(WeylOrderRecord {
            record: "weyl-order",
            command: self.command.to_string(),
            pair: self.name.to_string(),
            normalization: NORMALIZATION,
            cartan_type: ty,
            order: order.to_string(),
            enumerated,
            cap: self.args.order_cap,
            cap_exceeded: !fits,
        }));
        Ok(())
    }

    fn enumerate(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        let group = self.pair.root_system().weyl_group(self.args.order_cap)?;
        Ok(group.iter().map(|w| w.matrix().to_vec()).collect())
    }

    fn char_dim(&self, recs: &mut Vec<Record>) -> Result<()> {
        let w = self.tau_weight();
        let dim = weyl_dimension(&w, self.pair.root_system())?;
        recs.push(Record::CharDim(CharDimRecord {
            record: "char-dim",
            command: self.command.to_string(),
            pair: self.name.to_string(),
            normalization: NORMALIZATION,
            weight: coords_str(w.coords()),
            dimension: dim.to_string(),
        }));
        Ok(())
    }

    fn char_branch(&self, recs: &mut Vec<Record>) -> Result<()> {
        let rs = self.pair.root_system();
        let w = self.tau_weight();
        let ch = irreducible_character(&w, rs)?;
        let dec = branch_to_compact(&ch, self.pair)?;
        let sub = self.pair.compact_subsystem();
        for (hw, mult) in dec.entries() {
            let f = rs.to_basis(hw, Basis::FundamentalWeight)?;
            let k_dim = sub.weyl_dimension(rs, f.coords());
            recs.push(Record::BranchTerm(BranchTermRecord {
                record: "branch-term",
                command: self.command.to_string(),
                pair: self.name.to_string(),
                normalization: NORMALIZATION,
                weight: coords_str(f.coords()),
                multiplicity: mult.to_string(),
                k_dimension: rat_str(&k_dim),
            }));
        }
        Ok(())
    }

    fn pair_validate(&self, recs: &mut Vec<Record>) -> Result<()> {
        let rs = self.pair.root_system();
        let rerender = config::render_config(
            self.pair,
            self.name,
            &self.tau_cfg,
            &self.elem_cfg,
            self.cfg.arith.as_ref(),
        );
        recs.push(Record::PairSummary(PairSummaryRecord {
            record: "pair-summary",
            command: self.command.to_string(),
            pair: self.name.to_string(),
            normalization: NORMALIZATION,
            cartan_type: rs.cartan_type().to_string(),
            rank: rs.rank() as u64,
            compact_positive: self
                .pair
                .compact_positive()
                .iter()
                .map(|r| r.sr_coords().to_vec())
                .collect(),
            noncompact_positive: self
                .pair
                .noncompact_positive()
                .iter()
                .map(|r| r.sr_coords().to_vec())
                .collect(),
            dual_euler_characteristic: self.pair.chi_dual().to_string(),
            rerender,
        }));
        Ok(())
    }

    fn index_g(&self, recs: &mut Vec<Record>) -> Result<()> {
        let rs = self.pair.root_system();
        let tau = self.tau_spec()?;
        let report = g_index(&tau, self.pair)?;
        let lambda = rs.to_basis(&report.lambda, Basis::FundamentalWeight)?;
        let dominant = rs.to_basis(&report.dominant, Basis::FundamentalWeight)?;
        recs.push(Record::IndexG(IndexGRecord {
            record: "index-g",
            command: self.command.to_string(),
            pair: self.name.to_string(),
            normalization: NORMALIZATION,
            tau_weight: coords_str(tau.weight().coords()),
            lambda: coords_str(lambda.coords()),
            regular: report.regular,
            dominant: coords_str(dominant.coords()),
            sign: report.sign,
            dim_w: report.dim_w.to_string(),
            chi: report.chi.to_string(),
            unsigned: rat_str(&report.unsigned),
            signed: rat_str(&report.signed),
        }));
        Ok(())
    }

    fn index_euler(&self, recs: &mut Vec<Record>) -> Result<()> {
        let tau = self.tau_spec()?;
        let value = euler_index(&tau, self.pair)?;
        recs.push(Record::IndexEuler(IndexEulerRecord {
            record: "index-euler",
            command: self.command.to_string(),
            pair: self.name.to_string(),
            normalization: NORMALIZATION,
            tau_weight: coords_str(tau.weight().coords()),
            value: rat_str(&value),
        }));
        Ok(())
    }

    fn index_arith(&self, recs: &mut Vec<Record>) -> Result<()> {
        let Some(arith) = &self.cfg.arith else {
            return Err(CliError::Usage(
                "index-arith needs an [arith] section".to_string(),
            ));
        };
        let tau = self.tau_spec()?;
        let main = match arith.operator {
            OperatorKind::Dirac => g_index(&tau, self.pair)?.signed,
            OperatorKind::Euler => euler_index(&tau, self.pair)?,
        };
        let value = arithmetic_index(
            arith.operator,
            &tau,
            self.pair,
            &arith.chi_gamma,
            &arith.error_term,
        )?;
        recs.push(Record::IndexArith(IndexArithRecord {
            record: "index-arith",
            command: self.command.to_string(),
            pair: self.name.to_string(),
            normalization: NORMALIZATION,
            operator: operator_name(arith).to_string(),
            tau_weight: coords_str(tau.weight().coords()),
            chi_gamma: arith.chi_gamma.to_string(),
            error_term: rat_str(&arith.error_term),
            main_term: rat_str(&main),
            value: rat_str(&value),
        }));
        Ok(())
    }

    fn orbital_eval(&self, recs: &mut Vec<Record>) -> Result<()> {
        if self.cfg.element.is_none() {
            return Err(CliError::Usage(
                "orbital-eval needs an [element] section".to_string(),
            ));
        }
        let t = TorsionElement::new(self.elem_cfg.x.clone());
        let orbital = |kind: &str, regular, value, vanishes, constants| {
            Record::Orbital(OrbitalRecord {
                record: "orbital",
                command: self.command.to_string(),
                pair: self.name.to_string(),
                normalization: NORMALIZATION,
                kind: kind.to_string(),
                element: coords_str(t.coords()),
                order: t.order(),
                regular,
                value,
                vanishes,
                constants,
            })
        };

        match self
            .tau_spec()
            .and_then(|tau| Ok(orbital_g_tau(&t, &tau, self.pair)?))
        {
            Ok(res) => recs.push(orbital(
                "g-tau",
                res.regular,
                Some(CycloValue::of(&res.value)),
                None,
                None,
            )),
            Err(e) => push_err(recs, self.command, Some(self.name), &e),
        }

        let sigma = self.tau_weight();
        match orbital_f_sigma(
            &t,
            &sigma,
            self.pair,
            &self.elem_cfg.c_g,
            self.elem_cfg.component_index,
        ) {
            Ok(res) => recs.push(orbital(
                "f-sigma",
                res.regular,
                Some(CycloValue::of(&res.value)),
                None,
                res.constants_used.map(|c| ConstantsValue {
                    c_g: rat_str(&c.c_g),
                    component_index: c.component_index,
                }),
            )),
            Err(e) => push_err(recs, self.command, Some(self.name), &e.into()),
        }

        let vanishes = euler_character_vanishing(&t, self.pair)?;
        let evc = self
            .pair
            .euler_virtual_character()
            .evaluate_at_torsion(&t)?
            .with_minimal_conductor();
        recs.push(orbital(
            "vanishing",
            self.pair.is_regular_element(&t)?,
            Some(CycloValue::of(&evc)),
            Some(vanishes),
            None,
        ));
        Ok(())
    }

    fn identity_suite(&self, recs: &mut Vec<Record>) -> Result<()> {
        let report = identity_suite(self.pair, self.args.torsion_order);
        for entry in report.entries {
            recs.push(Record::SuiteEntry(SuiteEntryRecord {
                record: "suite-entry",
                command: self.command.to_string(),
                pair: self.name.to_string(),
                normalization: NORMALIZATION,
                name: entry.name.to_string(),
                passed: entry.passed,
                checked: entry.checked,
                counterexample: entry.counterexample,
            }));
        }
        Ok(())
    }
}

fn operator_name(arith: &ArithConfig) -> &'static str {
    match arith.operator {
        OperatorKind::Dirac => "dirac",
        OperatorKind::Euler => "euler",
    }
}
