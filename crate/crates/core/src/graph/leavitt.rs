//! Prime, semiprime and primitive verdicts for Leavitt path algebras.

use super::paths::acyclic_graph_groupoid;
use super::{DirectedGraph, GraphError};
use crate::algebra::{structural_is_prime, Method, Obstruction, PrimenessVerdict, Property};
use crate::group::{group_algebra_is_prime, GroupSpec};
use crate::ring::RingSpec;

/// `L_R(E)` is prime iff `R` is an integral domain and `E` is downward
/// directed. For acyclic `E` the verdict is checked against the structural
/// verdict on the (finite) graph groupoid, whose element witness it carries.
pub fn leavitt_prime_verdict(
    g: &DirectedGraph,
    ring: &RingSpec,
) -> Result<PrimenessVerdict, GraphError> {
    g.validate()?;
    let p = Property::Prime;
    let verdict = if g.vertices == 0 {
        PrimenessVerdict::fails(p, Method::Structural, "the empty graph has zero algebra", Obstruction::ZeroAlgebra)
    } else if !ring.is_integral_domain() {
        PrimenessVerdict::fails(
            p,
            Method::Structural,
            "integral domain clause fails: coefficient ring has zero divisors",
            Obstruction::NotADomain,
        )
    } else if let Some((u, v)) = g.downward_directed_witness() {
        PrimenessVerdict::fails(
            p,
            Method::Structural,
            format!("downward directed clause fails: vertices {u} and {v} have no common lower vertex"),
            Obstruction::NotDownwardDirected { u, v },
        )
        .justify("(MT3) fails, so the graph groupoid is not topologically transitive")
    } else if let Some(cycle) = g.cycle_without_exit() {
        // Every vertex reaches the exit-free cycle; its periodic path has a
        // dense orbit with isotropy Z, and R[x, x⁻¹] is a domain.
        let laurent_domain = RingSpec::laurent(ring.clone())
            .map_or(ring.is_integral_domain(), |l| l.is_integral_domain());
        let z_prime = group_algebra_is_prime(&GroupSpec::InfiniteCyclic, ring);
        if !z_prime || !laurent_domain {
            return Err(GraphError::InternalDisagreement(
                "Laurent ring over a domain is not a domain".into(),
            ));
        }
        PrimenessVerdict::holds(p, Method::Structural, "R is a domain and E is downward directed")
            .justify(format!(
                "cycle {cycle:?} has no exit; its periodic boundary path has a dense orbit with isotropy Z and R[x,x⁻¹] is prime"
            ))
    } else {
        PrimenessVerdict::holds(p, Method::Structural, "R is a domain and E is downward directed")
            .justify("condition (L) holds: the graph groupoid is effective and topologically transitive")
    };
    if !g.is_acyclic() || g.vertices == 0 {
        return Ok(verdict);
    }
    let gg = acyclic_graph_groupoid(g)?;
    let structural = structural_is_prime(&gg.groupoid, ring);
    if structural.holds != verdict.holds {
        return Err(GraphError::InternalDisagreement(format!(
            "graph criterion says {}, graph groupoid says {}",
            verdict.holds, structural.holds
        )));
    }
    let mut verdict = verdict.justify("agrees with the structural verdict on the graph groupoid");
    verdict.witness = structural.witness;
    Ok(verdict)
}

/// `L_R(E)` is semiprime iff `R` is reduced, whatever the graph.
pub fn leavitt_semiprime_verdict(ring: &RingSpec) -> PrimenessVerdict {
    let p = Property::Semiprime;
    let v = if ring.is_reduced() {
        PrimenessVerdict::holds(p, Method::Structural, "coefficient ring is reduced")
    } else {
        PrimenessVerdict::fails(p, Method::Structural, "coefficient ring is not reduced", Obstruction::NotReduced)
    };
    v.justify("Laurent polynomial rings over reduced rings are reduced, so every isotropy group algebra is semiprime")
}

/// Over a field, `L_K(E)` is primitive iff `E` satisfies condition (L), is
/// downward directed and has the countable separation property.
pub fn leavitt_primitive_verdict(
    g: &DirectedGraph,
    ring: &RingSpec,
) -> Result<PrimenessVerdict, GraphError> {
    g.validate()?;
    if !ring.is_field() {
        return Err(GraphError::NotAField(ring.to_string()));
    }
    let p = Property::Primitive;
    let csp = g.has_csp();
    let clauses = [
        format!("condition (L): {}", g.condition_l()),
        format!("downward directed: {}", g.is_downward_directed()),
        format!("countable separation: {} (minimal witness {:?})", csp.holds, csp.minimal),
    ];
    let mut v = if g.vertices == 0 {
        PrimenessVerdict::fails(p, Method::Structural, "the empty graph has zero algebra", Obstruction::ZeroAlgebra)
    } else if let Some(edges) = g.cycle_without_exit() {
        PrimenessVerdict::fails(
            p,
            Method::Structural,
            "condition (L) fails: a cycle has no exit",
            Obstruction::CycleWithoutExit { edges },
        )
    } else if let Some((u, v)) = g.downward_directed_witness() {
        PrimenessVerdict::fails(
            p,
            Method::Structural,
            format!("downward directed clause fails at vertices {u} and {v}"),
            Obstruction::NotDownwardDirected { u, v },
        )
    } else {
        PrimenessVerdict::holds(p, Method::Structural, "condition (L), (MT3) and CSP all hold")
    };
    for c in clauses {
        v = v.justify(c);
    }
    Ok(v)
}

/// Re-derives a graph-level obstruction.
pub fn replay_graph_obstruction(
    g: &DirectedGraph,
    ring: &RingSpec,
    v: &PrimenessVerdict,
) -> Result<(), GraphError> {
    let fail = |m: &str| Err(GraphError::InternalDisagreement(m.into()));
    match &v.obstruction {
        Some(Obstruction::NotDownwardDirected { u, v: w }) => {
            let reach = g.reachability();
            if (0..g.vertices).any(|x| reach[*u][x] && reach[*w][x]) {
                return fail("the vertices have a common lower vertex");
            }
        }
        Some(Obstruction::CycleWithoutExit { edges }) => {
            let closed = edges
                .iter()
                .zip(edges.iter().cycle().skip(1))
                .all(|(&e, &f)| g.edges[e].dst == g.edges[f].src);
            if edges.is_empty() || !closed || edges.iter().any(|&e| g.out_degree(g.edges[e].src) != 1)
            {
                return fail("not a cycle without exit");
            }
        }
        Some(Obstruction::NotADomain) if ring.is_integral_domain() => return fail("domain"),
        Some(Obstruction::NotReduced) if ring.is_reduced() => return fail("reduced"),
        _ => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::new(n, e).unwrap()
    }

    #[test]
    fn fixtures() {
        let q = RingSpec::Rationals;
        let lp = g(1, &[(0, 0)]);
        assert!(leavitt_prime_verdict(&lp, &q).unwrap().holds);
        let v = leavitt_primitive_verdict(&lp, &q).unwrap();
        assert!(!v.holds);
        replay_graph_obstruction(&lp, &q, &v).unwrap();

        let two = g(3, &[(0, 1), (0, 2)]);
        let v = leavitt_prime_verdict(&two, &q).unwrap();
        assert!(!v.holds);
        assert!(v.witness.is_some());
        replay_graph_obstruction(&two, &q, &v).unwrap();
        assert!(!leavitt_primitive_verdict(&two, &q).unwrap().holds);

        assert!(!leavitt_prime_verdict(&g(2, &[(0, 1)]), &RingSpec::IntegersMod(6)).unwrap().holds);
        assert!(leavitt_primitive_verdict(&g(1, &[]), &q).unwrap().holds);
        assert!(matches!(
            leavitt_primitive_verdict(&lp, &RingSpec::Integers),
            Err(GraphError::NotAField(_))
        ));

        assert!(!leavitt_semiprime_verdict(&RingSpec::IntegersMod(4)).holds);
        assert!(leavitt_semiprime_verdict(&RingSpec::IntegersMod(6)).holds);
        assert!(leavitt_semiprime_verdict(&q).holds);
    }
}
