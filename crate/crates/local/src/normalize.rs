//! Collapsing an environment to a relevant one with the same strategic
//! content: start color pushed down to its parity, checkpoint indices
//! renumbered so that consecutive same-parity hits merge, and the dominant
//! even checkpoint (which seals the game at its value) replaced by a stop.

use std::collections::BTreeMap;

use cspg_core::error::{domain, Result};
use cspg_core::GameForm;

use crate::env::{Environment, Target};
use crate::order::even_ceil_val;
use crate::value::simple_game_value;

/// Returns the normalized environment together with the index map applied
/// to the surviving checkpoint colors.
pub fn normalize_to_relevant(
    form: &GameForm,
    env: &Environment,
) -> Result<(Environment, BTreeMap<usize, usize>)> {
    let sol = simple_game_value(form, env)?;
    if !sol.certified {
        return Err(domain(format!(
            "game value is not certified (bounds {} and {}); refusing normalization",
            sol.lower, sol.upper
        )));
    }
    let u = sol.value;

    // qinit loops are indistinguishable from bouncing off k_c.
    let mut p1: BTreeMap<String, Target> = BTreeMap::new();
    for o in form.outcomes() {
        let t = match env.target(o)? {
            Target::QInit => Target::K(env.c),
            t => t.clone(),
        };
        p1.insert(o.clone(), t);
    }

    let top = even_ceil_val(env.e);
    // Checkpoint indices that matter: c itself plus every hit index strictly
    // between c and the dominant even ceiling.
    let mut anchors = vec![env.c];
    for t in p1.values() {
        if let Target::K(i) = t {
            if *i > env.c && *i < top && !anchors.contains(i) {
                anchors.push(*i);
            }
        }
    }
    anchors.sort_unstable();

    let mut f: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cur = env.c % 2;
    f.insert(env.c, cur);
    for w in anchors.windows(2) {
        if w[1] % 2 != w[0] % 2 {
            cur += 1;
        }
        f.insert(w[1], cur);
    }

    let mut p2: BTreeMap<String, Target> = BTreeMap::new();
    let mut e2 = env.c % 2;
    for (o, t) in p1 {
        let t2 = match t {
            Target::K(i) if i >= top => Target::Value(u.clone()),
            Target::K(i) => {
                let img = f[&i.max(env.c)];
                e2 = e2.max(img);
                Target::K(img)
            }
            other => other,
        };
        p2.insert(o, t2);
    }

    let env2 = Environment::new(env.c % 2, e2, p2)?;
    Ok((env2, f))
}
