use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{SpectralPage, SpectralRun};
use crate::floercomplex::FloerComplex;

/// Serialized page. `delta` and `representatives` are only filled in
/// verbose dumps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageDump {
    pub r: usize,
    #[serde(rename = "V")]
    pub v: BTreeMap<String, usize>,
    pub delta_rank: BTreeMap<String, usize>,
    pub collapsed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<BTreeMap<String, Vec<[usize; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

fn key(m: usize) -> String {
    m.to_string()
}

pub fn dump_page(fc: &FloerComplex, page: &SpectralPage, collapsed: bool, verbose: bool) -> PageDump {
    let v = page.dims().into_iter().enumerate().map(|(m, d)| (key(m), d)).collect();
    let delta_rank = page.delta_ranks().into_iter().enumerate().map(|(m, d)| (key(m), d)).collect();
    let (delta, representatives) = if verbose {
        let gens = fc.morse().generators();
        let delta = (0..page.slots().len())
            .map(|m| {
                let d = page.delta(m as i64).expect("slot");
                (key(m), d.entries().into_iter().map(|(r, c)| [r, c]).collect())
            })
            .collect();
        let reps = page
            .slots()
            .iter()
            .enumerate()
            .map(|(m, s)| {
                let start = fc.morse().degree_range(m as i64).start;
                let names = s
                    .representatives()
                    .iter()
                    .map(|x| x.ones().map(|i| gens[start + i].name.clone()).collect())
                    .collect();
                (key(m), names)
            })
            .collect();
        (Some(delta), Some(reps))
    } else {
        (None, None)
    };
    PageDump {
        r: page.r,
        v,
        delta_rank,
        collapsed,
        delta,
        representatives,
    }
}

pub fn dump_run(fc: &FloerComplex, run: &SpectralRun, verbose: bool) -> Vec<PageDump> {
    run.pages
        .iter()
        .map(|p| dump_page(fc, p, run.collapsed(p.r), verbose))
        .collect()
}
