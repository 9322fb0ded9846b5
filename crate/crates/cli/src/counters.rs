//! The counter machine format.
//!
//! ```text
//! TRVASS <m> | RVASS <m> | VASS <m>
//! TRANS <src> <dst> ADD <v1> … <vm>
//! TRANS <src> <dst> TRANSFER <i> <j>
//! TRANS <src> <dst> RESET <i>
//! QUERY <q0> <v1> … <vm> <target>
//! ```
//!
//! Dimensions are 1-based. States are declared by use. ADD entries may be
//! arbitrary integers; larger steps are split into unit steps.

use std::collections::{BTreeMap, BTreeSet};

use hra::counters::{CState, CounterConfig, CounterMachine, Effect, MachineClass};

use crate::format::{number, tokens, ParseError, ParseErrorKind};

#[derive(Clone, Debug)]
pub struct CounterDocument {
    /// The class named in the header.
    pub class: MachineClass,
    pub machine: CounterMachine,
    /// Initial configuration and target state.
    pub query: Option<(CounterConfig, CState)>,
}

fn class_name(c: MachineClass) -> &'static str {
    match c {
        MachineClass::Vass => "VASS",
        MachineClass::RVass => "RVASS",
        MachineClass::TrVass => "TRVASS",
    }
}

struct States {
    ids: BTreeMap<String, CState>,
}

impl States {
    fn get(&mut self, mc: &mut CounterMachine, s: &str) -> CState {
        *self.ids.entry(s.to_owned()).or_insert_with(|| mc.add_state(s))
    }
}

pub fn parse_counters(text: &str) -> Result<CounterDocument, ParseError> {
    let mut head: Option<(MachineClass, CounterMachine)> = None;
    let mut states = States { ids: BTreeMap::new() };
    let mut query = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        let syntax = |msg: &str| ParseError::at(line, ParseErrorKind::Syntax(msg.to_owned()));
        let class = match toks[0] {
            "VASS" => Some(MachineClass::Vass),
            "RVASS" => Some(MachineClass::RVass),
            "TRVASS" => Some(MachineClass::TrVass),
            _ => None,
        };
        if let Some(class) = class {
            if head.is_some() {
                return Err(ParseError::at(line, ParseErrorKind::DuplicateHeader));
            }
            let [_, m] = toks[..] else {
                return Err(syntax("expected `<CLASS> <m>`"));
            };
            let mc = CounterMachine::new(number(line, m)?)
                .map_err(|e| ParseError::at(line, ParseErrorKind::Syntax(e.to_string())))?;
            head = Some((class, mc));
            continue;
        }
        let Some((class, mc)) = head.as_mut() else {
            return Err(ParseError::at(line, ParseErrorKind::MissingHeader));
        };
        let dims = mc.dims();
        let dim = |tok: &str| -> Result<usize, ParseError> {
            let d: usize = number(line, tok)?;
            if d == 0 || d > dims {
                return Err(syntax(&format!("dimension {d} out of range")));
            }
            Ok(d - 1)
        };
        let arity = |found: usize| {
            if found != dims {
                Err(ParseError::at(line, ParseErrorKind::Arity { expected: dims, found }))
            } else {
                Ok(())
            }
        };
        match toks[0] {
            "TRANS" => {
                if toks.len() < 4 {
                    return Err(syntax("expected `TRANS <src> <dst> <effect> …`"));
                }
                let src = states.get(mc, toks[1]);
                let dst = states.get(mc, toks[2]);
                let args = &toks[4..];
                let violation = |what: &str| {
                    ParseError::at(line, ParseErrorKind::ClassViolation(format!("{what} not allowed in a {}", class_name(*class))))
                };
                match toks[3] {
                    "ADD" => {
                        arity(args.len())?;
                        let v: Vec<i64> = args.iter().map(|t| number(line, t)).collect::<Result<_, _>>()?;
                        mc.add_general(src, &v, dst)
                            .map_err(|e| ParseError::at(line, ParseErrorKind::Syntax(e.to_string())))?;
                    }
                    "TRANSFER" => {
                        if *class != MachineClass::TrVass {
                            return Err(violation("TRANSFER"));
                        }
                        let [i, j] = args[..] else {
                            return Err(syntax("expected `TRANSFER <i> <j>`"));
                        };
                        mc.add_transition(src, Effect::Transfer { from: dim(i)?, to: dim(j)? }, dst)
                            .map_err(|e| ParseError::at(line, ParseErrorKind::Syntax(e.to_string())))?;
                    }
                    "RESET" => {
                        if *class == MachineClass::Vass {
                            return Err(violation("RESET"));
                        }
                        let [i] = args[..] else {
                            return Err(syntax("expected `RESET <i>`"));
                        };
                        mc.add_transition(src, Effect::Reset(dim(i)?), dst)
                            .map_err(|e| ParseError::at(line, ParseErrorKind::Syntax(e.to_string())))?;
                    }
                    other => return Err(syntax(&format!("unknown effect `{other}`"))),
                }
            }
            "QUERY" => {
                if toks.len() < 3 {
                    return Err(syntax("expected `QUERY <q0> <v1> … <vm> <target>`"));
                }
                arity(toks.len() - 3)?;
                let values: Vec<u64> = toks[2..toks.len() - 1].iter().map(|t| number(line, t)).collect::<Result<_, _>>()?;
                let q0 = states.get(mc, toks[1]);
                let target = states.get(mc, toks[toks.len() - 1]);
                query = Some((CounterConfig::new(q0, values), target));
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }
    let (class, machine) = head.ok_or(ParseError::file(ParseErrorKind::MissingHeader))?;
    Ok(CounterDocument { class, machine, query })
}

fn state_ids(mc: &CounterMachine) -> Vec<String> {
    let mut seen = BTreeSet::new();
    mc.states()
        .map(|q| {
            let mut id: String = mc
                .state_label(q)
                .chars()
                .map(|c| if c.is_whitespace() { '_' } else { c })
                .collect();
            if id.is_empty() || id.starts_with('#') {
                id = format!("c{}{id}", q.0);
            }
            if !seen.insert(id.clone()) {
                id = format!("{id}~{}", q.0);
                seen.insert(id.clone());
            }
            id
        })
        .collect()
}

pub fn print_counters(mc: &CounterMachine, query: Option<(&CounterConfig, CState)>) -> String {
    let ids = state_ids(mc);
    let mut out = format!("{} {}\n", class_name(mc.class()), mc.dims());
    for t in mc.transitions() {
        let (s, d) = (&ids[t.src.index()], &ids[t.dst.index()]);
        let effect = match &t.effect {
            Effect::Add(v) => {
                let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("ADD {}", vs.join(" "))
            }
            Effect::Transfer { from, to } => format!("TRANSFER {} {}", from + 1, to + 1),
            Effect::Reset(i) => format!("RESET {}", i + 1),
        };
        out.push_str(&format!("TRANS {s} {d} {effect}\n"));
    }
    if let Some((init, target)) = query {
        let vs: Vec<String> = init.values.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("QUERY {} {} {}\n", ids[init.state.index()], vs.join(" "), ids[target.index()]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const PUMP: &str = "\
VASS 1
TRANS q0 q0 ADD 1
TRANS q0 q1 ADD -1
TRANS q1 qf ADD -1
QUERY q0 0 qf
";

    #[test]
    fn pump_parses() {
        let doc = parse_counters(PUMP).unwrap();
        assert_eq!(doc.machine.dims(), 1);
        assert_eq!(doc.machine.transitions().len(), 3);
        let (init, target) = doc.query.unwrap();
        assert_eq!(init.values, vec![0]);
        assert_eq!(doc.machine.state_label(target), "qf");
    }

    #[test]
    fn class_violation() {
        let err = parse_counters("VASS 2\nTRANS a b TRANSFER 1 2\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(matches!(err.kind, ParseErrorKind::ClassViolation(_)));
        assert!(parse_counters("RVASS 2\nTRANS a b RESET 1\n").is_ok());
    }

    #[test]
    fn arity_mismatch() {
        let err = parse_counters("VASS 2\nTRANS a b ADD 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Arity { expected: 2, found: 1 });
    }

    #[test]
    fn magnitude_two_is_split() {
        let doc = parse_counters("VASS 1\nTRANS a b ADD 2\n").unwrap();
        assert_eq!(doc.machine.transitions().len(), 2);
        assert_eq!(doc.machine.state_count(), 3);
    }

    #[test]
    fn round_trip() {
        let doc = parse_counters("TRVASS 2\nTRANS a b ADD 1 -1\nTRANS b a TRANSFER 2 1\nTRANS a a RESET 2\nQUERY a 3 0 b\n").unwrap();
        let q = doc.query.as_ref().map(|(c, t)| (c, *t));
        let text = print_counters(&doc.machine, q);
        let again = parse_counters(&text).unwrap();
        assert_eq!(again.machine.transitions(), doc.machine.transitions());
        assert_eq!(print_counters(&again.machine, again.query.as_ref().map(|(c, t)| (c, *t))), text);
    }
}
