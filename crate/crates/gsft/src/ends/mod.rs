//! Finite-radius probes of how a group's Cayley ball decomposes at
//! infinity: boundaries of inner balls, annulus components reaching the
//! outer sphere, and Menger widths (vertex-disjoint path counts) between
//! spheres. Growing per-component widths indicate a plane-like direction;
//! bounded ones indicate line-like or tree-like geometry.

mod flow;

use crate::group::{BallGraph, GroupError, GroupModel};
use flow::disjoint_path_count;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndsError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("inner radius {r} must be smaller than outer radius {big_r}")]
    BadRange { r: u32, big_r: u32 },
    #[error("radii must be non-empty and strictly increasing")]
    BadRadii,
}

/// Vertices of `ball` adjacent to `inner` but not in it, sorted.
pub fn boundary(ball: &BallGraph, inner: &[usize]) -> Vec<usize> {
    let mut in_inner = vec![false; ball.len()];
    for &v in inner {
        in_inner[v] = true;
    }
    let mut out: Vec<usize> = inner
        .iter()
        .flat_map(|&v| ball.adjacency[v].iter().copied())
        .filter(|&u| !in_inner[u])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// One annulus component reaching the outer sphere. Vertex lists index into
/// the decomposition's ball and are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterComponent {
    pub vertices: Vec<usize>,
    /// Contact vertices on the inner sphere (distance exactly r).
    pub inner: Vec<usize>,
    /// Contact vertices on the outer sphere (distance exactly R).
    pub outer: Vec<usize>,
}

/// Components of the annulus r <= distance <= R that touch the R-sphere,
/// ordered by smallest vertex index.
#[derive(Debug, Clone)]
pub struct OuterDecomposition {
    pub ball: BallGraph,
    pub r: u32,
    pub big_r: u32,
    pub components: Vec<OuterComponent>,
}

pub fn outer_components(
    model: &GroupModel,
    r: u32,
    big_r: u32,
    cap: usize,
) -> Result<OuterDecomposition, EndsError> {
    if r >= big_r {
        return Err(EndsError::BadRange { r, big_r });
    }
    let ball = BallGraph::build(model, big_r, cap)?;
    let in_annulus: Vec<bool> = ball.distance.iter().map(|&d| d >= r).collect();
    let mut seen = vec![false; ball.len()];
    let mut components = Vec::new();
    for start in 0..ball.len() {
        if !in_annulus[start] || seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut vertices = Vec::new();
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &u in &ball.adjacency[v] {
                if in_annulus[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        vertices.sort_unstable();
        let outer: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|&v| ball.distance[v] == big_r)
            .collect();
        if outer.is_empty() {
            continue;
        }
        let inner = vertices
            .iter()
            .copied()
            .filter(|&v| ball.distance[v] == r)
            .collect();
        components.push(OuterComponent {
            vertices,
            inner,
            outer,
        });
    }
    components.sort_by_key(|c| c.vertices[0]);
    Ok(OuterDecomposition {
        ball,
        r,
        big_r,
        components,
    })
}

/// Maximum number of vertex-disjoint paths between the r-sphere and the
/// R-sphere inside the R-ball. Equals the minimum vertex cut separating the
/// spheres.
pub fn menger_width(
    model: &GroupModel,
    r: u32,
    big_r: u32,
    cap: usize,
) -> Result<usize, EndsError> {
    if r >= big_r {
        return Err(EndsError::BadRange { r, big_r });
    }
    let ball = BallGraph::build(model, big_r, cap)?;
    let allowed = vec![true; ball.len()];
    Ok(disjoint_path_count(
        &ball.adjacency,
        &allowed,
        &ball.sphere(r),
        &ball.sphere(big_r),
    ))
}

/// Per-radius probe row at the radius pair (r, 2r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub r: u32,
    pub big_r: u32,
    /// Size of the exterior neighbourhood of the r-ball.
    pub boundary: usize,
    /// Annulus components touching the outer sphere.
    pub components: usize,
    /// Global sphere-to-sphere width.
    pub width: usize,
    /// Width inside each component, component order.
    pub component_widths: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub model: String,
    pub rows: Vec<ProbeRow>,
    /// True when the per-component maximum width strictly increases along
    /// the probed radii: a plane-like thickness signal.
    pub growing: bool,
}

pub fn thickness_profile(
    model: &GroupModel,
    radii: &[u32],
    cap: usize,
) -> Result<ProbeReport, EndsError> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) || radii[0] == 0 {
        return Err(EndsError::BadRadii);
    }
    let mut rows = Vec::new();
    for &r in radii {
        let big_r = 2 * r;
        let deco = outer_components(model, r, big_r, cap)?;
        let ball = &deco.ball;
        let inner_ball: Vec<usize> = (0..ball.len())
            .filter(|&v| ball.distance[v] <= r)
            .collect();
        let boundary_size = boundary(ball, &inner_ball).len();
        let allowed_all = vec![true; ball.len()];
        let width = disjoint_path_count(
            &ball.adjacency,
            &allowed_all,
            &ball.sphere(r),
            &ball.sphere(big_r),
        );
        let component_widths: Vec<usize> = deco
            .components
            .iter()
            .map(|c| {
                let mut allowed = vec![false; ball.len()];
                for &v in &c.vertices {
                    allowed[v] = true;
                }
                disjoint_path_count(&ball.adjacency, &allowed, &c.inner, &c.outer)
            })
            .collect();
        rows.push(ProbeRow {
            r,
            big_r,
            boundary: boundary_size,
            components: deco.components.len(),
            width,
            component_widths,
        });
    }
    let maxima: Vec<usize> = rows
        .iter()
        .map(|row| row.component_widths.iter().copied().max().unwrap_or(0))
        .collect();
    let growing = maxima.len() >= 2 && maxima.windows(2).all(|w| w[0] < w[1]);
    Ok(ProbeReport {
        model: model.name(),
        rows,
        growing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1 << 20;

    #[test]
    fn boundary_examples() {
        let z = GroupModel::FreeAbelian(1);
        let ball = BallGraph::build(&z, 2, CAP).unwrap();
        let all: Vec<usize> = (0..ball.len()).collect();
        assert!(boundary(&ball, &all).is_empty());
        let edge = boundary(&ball, &[0]); // identity is vertex 0
        let mut names: Vec<i64> = edge
            .iter()
            .map(|&v| match &ball.vertices[v] {
                crate::group::GroupElement::Abelian(a) => a[0],
                _ => unreachable!(),
            })
            .collect();
        names.sort_unstable();
        assert_eq!(names, vec![-1, 1]);

        let z2 = GroupModel::FreeAbelian(2);
        let b3 = BallGraph::build(&z2, 3, CAP).unwrap();
        let inner: Vec<usize> = (0..b3.len()).filter(|&v| b3.distance[v] <= 1).collect();
        let bd = boundary(&b3, &inner);
        assert_eq!(bd.len(), 8);
        assert!(bd.iter().all(|&v| b3.distance[v] == 2));
    }

    #[test]
    fn outer_component_counts() {
        let z = GroupModel::FreeAbelian(1);
        assert_eq!(outer_components(&z, 1, 5, CAP).unwrap().components.len(), 2);
        let z2 = GroupModel::FreeAbelian(2);
        assert_eq!(outer_components(&z2, 1, 5, CAP).unwrap().components.len(), 1);
        let f2 = GroupModel::FreeGroup(2);
        assert_eq!(outer_components(&f2, 1, 4, CAP).unwrap().components.len(), 4);
        assert_eq!(outer_components(&f2, 2, 4, CAP).unwrap().components.len(), 12);
    }

    #[test]
    fn free_group_components_follow_sphere_growth() {
        for k in 1..=3usize {
            let m = GroupModel::FreeGroup(k);
            for r in 1..=3u32 {
                let expected = 2 * k * (2 * k - 1).pow(r - 1);
                let deco = outer_components(&m, r, r + 1, CAP).unwrap();
                assert_eq!(deco.components.len(), expected, "k={k} r={r}");
                // Tree components touch the inner sphere at exactly one
                // vertex each.
                assert!(deco.components.iter().all(|c| c.inner.len() == 1));
            }
        }
    }

    #[test]
    fn menger_width_examples() {
        let z = GroupModel::FreeAbelian(1);
        for (r, big_r) in [(1, 2), (1, 4), (2, 5)] {
            assert_eq!(menger_width(&z, r, big_r, CAP).unwrap(), 2);
        }
        let z2 = GroupModel::FreeAbelian(2);
        assert_eq!(menger_width(&z2, 1, 3, CAP).unwrap(), 4);
        let widths: Vec<usize> = (1..=4u32)
            .map(|r| menger_width(&z2, r, 2 * r, CAP).unwrap())
            .collect();
        assert_eq!(widths, vec![4, 8, 12, 16]);
    }

    #[test]
    fn width_bounded_by_sphere_sizes() {
        for model in [
            GroupModel::FreeAbelian(2),
            GroupModel::FreeGroup(2),
            GroupModel::Heisenberg,
        ] {
            for r in 1..=2u32 {
                let big_r = 2 * r;
                let ball = BallGraph::build(&model, big_r, CAP).unwrap();
                let w = menger_width(&model, r, big_r, CAP).unwrap();
                assert!(w <= ball.sphere(r).len().min(ball.sphere(big_r).len()));
            }
        }
    }

    /// Smallest vertex set whose removal cuts all inner-outer paths,
    /// found by brute-force subset enumeration in increasing size.
    fn brute_min_cut(ball: &BallGraph, sources: &[usize], sinks: &[usize]) -> usize {
        fn separated(
            ball: &BallGraph,
            removed: &[bool],
            sources: &[usize],
            sinks: &[usize],
        ) -> bool {
            let mut seen = vec![false; ball.len()];
            let mut stack: Vec<usize> = sources
                .iter()
                .copied()
                .filter(|&v| !removed[v])
                .collect();
            for &v in &stack {
                seen[v] = true;
            }
            while let Some(v) = stack.pop() {
                for &u in &ball.adjacency[v] {
                    if !removed[u] && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            sinks.iter().all(|&b| removed[b] || !seen[b])
        }
        fn choose(
            ball: &BallGraph,
            removed: &mut Vec<bool>,
            start: usize,
            left: usize,
            sources: &[usize],
            sinks: &[usize],
        ) -> bool {
            if left == 0 {
                return separated(ball, removed, sources, sinks);
            }
            for v in start..ball.len() {
                removed[v] = true;
                if choose(ball, removed, v + 1, left - 1, sources, sinks) {
                    removed[v] = false;
                    return true;
                }
                removed[v] = false;
            }
            false
        }
        for k in 0..=ball.len() {
            if choose(ball, &mut vec![false; ball.len()], 0, k, sources, sinks) {
                return k;
            }
        }
        unreachable!("removing everything always separates")
    }

    #[test]
    fn flow_matches_brute_force_cuts() {
        let cases = [
            (GroupModel::FreeAbelian(1), 1, 3),
            (GroupModel::FreeAbelian(2), 1, 2),
            (GroupModel::FreeGroup(2), 1, 2),
            (GroupModel::Heisenberg, 1, 2),
        ];
        for (model, r, big_r) in cases {
            let ball = BallGraph::build(&model, big_r, CAP).unwrap();
            let cut = brute_min_cut(&ball, &ball.sphere(r), &ball.sphere(big_r));
            let flow = menger_width(&model, r, big_r, CAP).unwrap();
            assert_eq!(flow, cut, "{}", model.name());
        }
    }

    #[test]
    fn profiles_classify_line_plane_tree() {
        let z = thickness_profile(&GroupModel::FreeAbelian(1), &[1, 2, 3], CAP).unwrap();
        assert!(!z.growing);
        assert!(z.rows.iter().all(|row| row.width == 2));
        assert!(z
            .rows
            .iter()
            .all(|row| row.component_widths == vec![1, 1]));

        let z2 = thickness_profile(&GroupModel::FreeAbelian(2), &[1, 2, 3], CAP).unwrap();
        assert!(z2.growing);
        assert!(z2.rows.iter().all(|row| row.components == 1));

        let f2 = thickness_profile(&GroupModel::FreeGroup(2), &[1, 2], CAP).unwrap();
        assert!(!f2.growing);
        assert!(f2
            .rows
            .iter()
            .all(|row| row.component_widths.iter().all(|&w| w == 1)));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let z = GroupModel::FreeAbelian(1);
        assert_eq!(
            menger_width(&z, 3, 3, CAP),
            Err(EndsError::BadRange { r: 3, big_r: 3 })
        );
        assert!(matches!(
            thickness_profile(&z, &[], CAP),
            Err(EndsError::BadRadii)
        ));
        assert!(matches!(
            thickness_profile(&z, &[2, 2], CAP),
            Err(EndsError::BadRadii)
        ));
    }
}
