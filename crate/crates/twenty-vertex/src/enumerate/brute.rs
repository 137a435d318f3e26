use crate::lattice::{Family, PathConfig, TriangleDomain, Vertex};

/// Calls `f` on every configuration of the domain.
///
/// Vertices are visited column by column, top to bottom, so all in-edges of a vertex are
/// known when it is reached and only balanced out-choices are tried.
pub fn for_each_config(domain: &TriangleDomain, mut f: impl FnMut(&PathConfig)) {
    let order: Vec<Vertex> = domain.vertices().collect();
    let mut c = PathConfig::with_boundary(domain);
    dfs(domain, &order, 0, &mut c, &mut f);
}

fn dfs(domain: &TriangleDomain, order: &[Vertex], i: usize, c: &mut PathConfig, f: &mut impl FnMut(&PathConfig)) {
    let Some(&v) = order.get(i) else {
        f(c);
        return;
    };
    let need = c.ins(v).iter().filter(|&&b| b).count();
    let fixed = Family::ALL.map(|fam| domain.external_out(v, fam));
    for bits in 0u8..8 {
        if bits.count_ones() as usize != need {
            continue;
        }
        let outs = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
        if (0..3).any(|j| fixed[j].is_some_and(|x| x != outs[j])) {
            continue;
        }
        for (j, fam) in Family::ALL.into_iter().enumerate() {
            if fixed[j].is_none() {
                c.set(v, fam, outs[j]);
            }
        }
        dfs(domain, order, i + 1, c, f);
    }
    for (j, fam) in Family::ALL.into_iter().enumerate() {
        if fixed[j].is_none() {
            c.set(v, fam, false);
        }
    }
}
