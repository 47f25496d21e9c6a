use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::order::{Alternative, LinearOrder};
use super::profile::{Profile, ProfileSpace};
use crate::{Error, Result};

/// How a social choice function computes its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScfKind {
    /// Dense table indexed by profile rank.
    Table(Vec<usize>),
    Dictatorship(usize),
    Constant(usize),
    /// Most first places; ties go to the smallest index.
    PluralityLex,
    /// Highest Borda score (`n - 1 - position`); ties go to the smallest index.
    BordaLex,
}

/// A total map from profiles of `voters` orders over `n` alternatives to an
/// alternative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocialChoiceFunction {
    n: usize,
    voters: usize,
    kind: ScfKind,
}

impl SocialChoiceFunction {
    pub fn dictatorship(n: usize, voters: usize, dictator: usize) -> Result<Self> {
        if dictator >= voters {
            return Err(Error::Precondition(format!("dictator {dictator} but only {voters} voters")));
        }
        Self::named(n, voters, ScfKind::Dictatorship(dictator))
    }

    pub fn constant(n: usize, voters: usize, a: Alternative) -> Result<Self> {
        if a.0 >= n {
            return Err(Error::AlternativeOutOfRange { index: a.0, n });
        }
        Self::named(n, voters, ScfKind::Constant(a.0))
    }

    pub fn plurality_lex(n: usize, voters: usize) -> Result<Self> {
        Self::named(n, voters, ScfKind::PluralityLex)
    }

    pub fn borda_lex(n: usize, voters: usize) -> Result<Self> {
        Self::named(n, voters, ScfKind::BordaLex)
    }

    fn named(n: usize, voters: usize, kind: ScfKind) -> Result<Self> {
        if n == 0 || voters == 0 {
            return Err(Error::Envelope { n, voters, reason: "need n >= 1 and N >= 1".into() });
        }
        Ok(Self { n, voters, kind })
    }

    pub fn from_table(n: usize, voters: usize, table: Vec<usize>) -> Result<Self> {
        let space = ProfileSpace::new(n, voters)?;
        if table.len() != space.len() {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected (n!)^N = {}",
                table.len(),
                space.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&a| a >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range for n = {n}")));
        }
        Ok(Self { n, voters, kind: ScfKind::Table(table) })
    }

    /// A uniformly random table drawn from `rng`.
    pub fn random_table<R: Rng>(n: usize, voters: usize, rng: &mut R) -> Result<Self> {
        let space = ProfileSpace::new(n, voters)?;
        let table = (0..space.len()).map(|_| rng.gen_range(0..n)).collect();
        Ok(Self { n, voters, kind: ScfKind::Table(table) })
    }

    /// `count` random tables from a ChaCha8 stream seeded with `seed`.
    pub fn seeded_tables(n: usize, voters: usize, seed: u64, count: usize) -> Result<Vec<Self>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| Self::random_table(n, voters, &mut rng)).collect()
    }

    pub fn alternatives(&self) -> usize {
        self.n
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn kind(&self) -> &ScfKind {
        &self.kind
    }

    pub fn space(&self) -> Result<ProfileSpace> {
        ProfileSpace::new(self.n, self.voters)
    }

    pub fn choose(&self, p: &Profile) -> Result<Alternative> {
        if p.voters() != self.voters {
            return Err(Error::ProfileLength { got: p.voters(), expected: self.voters });
        }
        if let Some(o) = p.orders.iter().find(|o| o.len() != self.n) {
            return Err(Error::InvalidOrder { ranking: o.ranking().to_vec(), n: self.n });
        }
        Ok(match &self.kind {
            ScfKind::Table(table) => {
                let rank = self.space()?.rank_of_profile(p)?;
                Alternative(table[rank])
            }
            _ => Alternative(self.evaluate_rule(&p.orders)),
        })
    }

    fn evaluate_rule(&self, orders: &[LinearOrder]) -> usize {
        match &self.kind {
            ScfKind::Table(_) => unreachable!("tables are looked up by rank"),
            ScfKind::Dictatorship(l) => orders[*l].top().0,
            ScfKind::Constant(a) => *a,
            ScfKind::PluralityLex => {
                let mut score = vec![0usize; self.n];
                for o in orders {
                    score[o.top().0] += 1;
                }
                argmax_smallest(&score)
            }
            ScfKind::BordaLex => {
                let mut score = vec![0usize; self.n];
                for o in orders {
                    for (pos, &a) in o.ranking().iter().enumerate() {
                        score[a] += self.n - 1 - pos;
                    }
                }
                argmax_smallest(&score)
            }
        }
    }

    /// Outcome for every profile, indexed by profile rank.
    pub fn tabulate(&self, space: &ProfileSpace) -> Vec<usize> {
        debug_assert_eq!((space.alternatives(), space.voters()), (self.n, self.voters));
        if let ScfKind::Table(table) = &self.kind {
            return table.clone();
        }
        let orders = space.orders();
        let mut buf = Vec::with_capacity(self.voters);
        (0..space.len())
            .map(|r| {
                buf.clear();
                let digits = space.digits(r).expect("rank in range");
                buf.extend(digits.into_iter().map(|d| orders[d].clone()));
                self.evaluate_rule(&buf)
            })
            .collect()
    }

    /// Materialises the function as a table-kind function.
    pub fn to_table(&self) -> Result<Self> {
        let space = self.space()?;
        Ok(Self { n: self.n, voters: self.voters, kind: ScfKind::Table(self.tabulate(&space)) })
    }

    pub fn to_file(&self) -> Result<ScfTableFile> {
        let space = self.space()?;
        let table = self.tabulate(&space);
        let entries = space.profiles().zip(table).map(|(profile, choice)| ScfTableEntry { profile, choice }).collect();
        Ok(ScfTableFile { n: self.n, voters: self.voters, entries })
    }

    /// Parses a rule spec such as `dictatorship:1`, `constant:0`,
    /// `plurality_lex` or `borda_lex`.
    pub fn from_rule(spec: &str, n: usize, voters: usize) -> Result<Self> {
        let rule: RuleSpec = spec.parse()?;
        rule.build(n, voters)
    }
}

fn argmax_smallest(score: &[usize]) -> usize {
    let mut best = 0;
    for (a, &s) in score.iter().enumerate() {
        if s > score[best] {
            best = a;
        }
    }
    best
}

/// Textual form of a named rule, `NAME[:ARG]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleSpec {
    Dictatorship(usize),
    Constant(usize),
    PluralityLex,
    BordaLex,
}

impl RuleSpec {
    pub fn build(&self, n: usize, voters: usize) -> Result<SocialChoiceFunction> {
        match *self {
            RuleSpec::Dictatorship(l) => SocialChoiceFunction::dictatorship(n, voters, l),
            RuleSpec::Constant(a) => SocialChoiceFunction::constant(n, voters, Alternative(a)),
            RuleSpec::PluralityLex => SocialChoiceFunction::plurality_lex(n, voters),
            RuleSpec::BordaLex => SocialChoiceFunction::borda_lex(n, voters),
        }
    }
}

impl FromStr for RuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let parse_arg = |arg: Option<&str>| -> Result<usize> {
            arg.ok_or_else(|| Error::Precondition(format!("rule `{name}` needs an argument")))?
                .parse()
                .map_err(|_| Error::Precondition(format!("bad argument in rule `{s}`")))
        };
        match (name, arg) {
            ("dictatorship", arg) => Ok(RuleSpec::Dictatorship(parse_arg(arg)?)),
            ("constant", arg) => Ok(RuleSpec::Constant(parse_arg(arg)?)),
            ("plurality_lex", None) => Ok(RuleSpec::PluralityLex),
            ("borda_lex", None) => Ok(RuleSpec::BordaLex),
            _ => Err(Error::Precondition(format!("unknown rule `{s}`"))),
        }
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSpec::Dictatorship(l) => write!(f, "dictatorship:{l}"),
            RuleSpec::Constant(a) => write!(f, "constant:{a}"),
            RuleSpec::PluralityLex => f.write_str("plurality_lex"),
            RuleSpec::BordaLex => f.write_str("borda_lex"),
        }
    }
}

/// On-disk form of a social choice table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScfTableFile {
    pub n: usize,
    #[serde(rename = "N")]
    pub voters: usize,
    pub entries: Vec<ScfTableEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScfTableEntry {
    pub profile: Profile,
    pub choice: usize,
}

impl ScfTableFile {
    /// Checks totality (every profile exactly once) and entry ranges.
    pub fn into_scf(self) -> Result<SocialChoiceFunction> {
        let space = ProfileSpace::new(self.n, self.voters).map_err(|e| Error::InvalidTable(e.to_string()))?;
        if self.entries.len() != space.len() {
            return Err(Error::InvalidTable(format!(
                "{} entries, but (n!)^N = {} profiles",
                self.entries.len(),
                space.len()
            )));
        }
        let mut table = vec![0; space.len()];
        let mut seen = HashSet::with_capacity(space.len());
        for entry in &self.entries {
            let rank = space.rank_of_profile(&entry.profile).map_err(|e| Error::InvalidTable(e.to_string()))?;
            if !seen.insert(rank) {
                return Err(Error::InvalidTable(format!("duplicate profile {:?}", entry.profile)));
            }
            if entry.choice >= self.n {
                return Err(Error::InvalidTable(format!("choice {} out of range for n = {}", entry.choice, self.n)));
            }
            table[rank] = entry.choice;
        }
        SocialChoiceFunction::from_table(self.n, self.voters, table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<SocialChoiceFunction> {
        let text = std::fs::read_to_string(path)?;
        let file: ScfTableFile = serde_json::from_str(&text).map_err(|e| Error::InvalidTable(e.to_string()))?;
        file.into_scf()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}
