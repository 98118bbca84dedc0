use super::{int_relations_essential, int_relations_null, phi_generator, EssentialKnotClass, LinkClass, SphereSpec};
use crate::error::Result;
use crate::group::Word;
use crate::span::{FamilyMember, RelationFamily};

/// INT(z) relations with decorations `d^r`, `|r| <= R`, for each direction
/// `d` (by default the group generators), or over the whole ball of radius R.
#[derive(Debug, Clone)]
pub struct IntFamily {
    z: LinkClass,
    labels: usize,
    directions: Vec<Word>,
    full_ball: bool,
}

impl IntFamily {
    pub fn new(z: LinkClass, labels: usize) -> IntFamily {
        let directions = z.group().generators();
        IntFamily { labels: labels.max(z.m()), z, directions, full_ball: false }
    }

    pub fn with_directions(mut self, directions: Vec<Word>) -> IntFamily {
        self.directions = directions;
        self
    }

    pub fn with_full_ball(mut self, on: bool) -> IntFamily {
        self.full_ball = on;
        self
    }

    pub fn decorations(&self, radius: usize) -> Vec<Word> {
        let mut v = if self.full_ball {
            self.z.group().ball(radius)
        } else {
            let r = radius as i64;
            let mut v = vec![self.z.group().identity()];
            for d in &self.directions {
                v.extend((-r..=r).map(|e| d.pow(e)));
            }
            v
        };
        v.sort();
        v.dedup();
        v
    }
}

impl RelationFamily for IntFamily {
    fn window(&self, radius: usize) -> Result<Vec<FamilyMember>> {
        let mut out = Vec::new();
        for i in 1..=self.z.m() {
            for j in 1..=self.labels {
                for g in self.decorations(radius) {
                    out.push(FamilyMember {
                        id: format!("INT[i={},j={},g={}]", i, j, g),
                        element: int_relations_null(&self.z, &g, i, j, self.labels)?,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Phi(z) generators for a fixed list of spheres and whisker words.
#[derive(Debug, Clone)]
pub struct PhiFamily {
    z: LinkClass,
    spheres: Vec<(String, SphereSpec)>,
    whiskers: Vec<Word>,
    labels: usize,
}

impl PhiFamily {
    pub fn new(z: LinkClass, spheres: Vec<(String, SphereSpec)>, whiskers: Vec<Word>, labels: usize) -> PhiFamily {
        PhiFamily { labels: labels.max(z.m()), z, spheres, whiskers }
    }
}

impl RelationFamily for PhiFamily {
    fn window(&self, _radius: usize) -> Result<Vec<FamilyMember>> {
        let mut out = Vec::new();
        for (name, s) in &self.spheres {
            for a in &self.whiskers {
                let sa = s.clone().with_whisker(a * s.whisker());
                for k in 1..=self.z.m() {
                    out.push(FamilyMember {
                        id: format!("PHI[S={},a={},k={}]", name, sa.whisker(), k),
                        element: phi_generator(&self.z, &sa, k, self.labels)?,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Essential INT relations `(1, beta^r, (1 - beta^r)(z + bar z))`, `|r| <= R`,
/// for `beta` ranging over centralizer generators of gamma.
#[derive(Debug, Clone)]
pub struct EssentialIntFamily {
    k: EssentialKnotClass,
    betas: Vec<Word>,
}

impl EssentialIntFamily {
    pub fn new(k: EssentialKnotClass) -> Result<EssentialIntFamily> {
        let betas = k.gamma().group().centralizer_generators(k.gamma())?;
        Ok(EssentialIntFamily { k, betas })
    }

    pub fn betas(&self) -> &[Word] {
        &self.betas
    }
}

impl RelationFamily for EssentialIntFamily {
    fn window(&self, radius: usize) -> Result<Vec<FamilyMember>> {
        let r = radius as i64;
        let mut out = Vec::new();
        for b in &self.betas {
            for e in -r..=r {
                out.push(FamilyMember {
                    id: format!("INT[beta={},r={}]", b, e),
                    element: int_relations_essential(&self.k, b, e)?,
                });
            }
        }
        Ok(out)
    }
}
