#include <deque>
#include <set>

#include "msml/core/errors.hpp"
#include "msml/smc/smc.hpp"

namespace msml::smc {

namespace {

const MachineVal kTrue{true, 1};
const MachineVal kFalse{true, 0};

// Joins a finished item onto the remaining control; null means nothing left.
CtrlPtr then_do(CtrlPtr next, const CtrlPtr& rest) {
  if (!rest) return next;
  if (!next) return rest;
  return ctrl_comp(std::move(next), rest);
}

MachineVal pop_any(SmcConfig& cfg, const char* who) {
  if (cfg.stack.empty())
    throw Error(std::string("stack underflow at ") + who);
  MachineVal v = cfg.stack.back();
  cfg.stack.pop_back();
  return v;
}

long long pop_nat(SmcConfig& cfg, const char* who) {
  MachineVal v = pop_any(cfg, who);
  if (v.is_bool)
    throw Error(std::string("boolean operand where a natural was expected at ") +
                who);
  return v.n;
}

// Executes the leftmost item of `head`, composing successors with `rest`.
void step_with(const SmcConfig& cfg, const CtrlPtr& head, const CtrlPtr& rest,
               std::vector<std::pair<SmcConfig, CtrlPtr>>& out) {
  switch (head->kind) {
    case Ctrl::Comp:
      step_with(cfg, head->c1, then_do(head->c2, rest), out);
      return;
    case Ctrl::Union:
      out.emplace_back(cfg, then_do(head->c1, rest));
      out.emplace_back(cfg, then_do(head->c2, rest));
      return;
    case Ctrl::Star:
      out.emplace_back(cfg, rest);  // exit
      out.emplace_back(cfg, then_do(ctrl_comp(head->c1, head), rest));
      return;
    case Ctrl::CA:
      switch (head->a->kind) {
        case AExp::Num: {
          SmcConfig next = cfg;
          next.stack.push_back({false, head->a->num});
          out.emplace_back(std::move(next), rest);
          return;
        }
        case AExp::Id: {
          SmcConfig next = cfg;
          auto it = cfg.mem.find(head->a->id);
          next.stack.push_back({false, it == cfg.mem.end() ? 0 : it->second});
          out.emplace_back(std::move(next), rest);
          return;
        }
        case AExp::Add:
          out.emplace_back(
              cfg, then_do(ctrl_comp(ctrl_ca(head->a->lhs),
                                     ctrl_comp(ctrl_ca(head->a->rhs),
                                               ctrl_plus())),
                           rest));
          return;
      }
      return;
    case Ctrl::CB:
      // right operand first, so leq pops the left operand's value off the top
      out.emplace_back(
          cfg, then_do(ctrl_comp(ctrl_ca(head->bx->rhs),
                                 ctrl_comp(ctrl_ca(head->bx->lhs),
                                           ctrl_leq())),
                       rest));
      return;
    case Ctrl::CS:
      switch (head->s->kind) {
        case Stmt::Skip:
          out.emplace_back(cfg, rest);
          return;
        case Stmt::Assign:
          out.emplace_back(
              cfg, then_do(ctrl_comp(ctrl_ca(head->s->aexp),
                                     ctrl_asgn(head->s->id)),
                           rest));
          return;
        case Stmt::Seq:
          out.emplace_back(
              cfg, then_do(ctrl_comp(ctrl_cs(head->s->s1),
                                     ctrl_cs(head->s->s2)),
                           rest));
          return;
        case Stmt::If:
          out.emplace_back(
              cfg,
              then_do(ctrl_comp(
                          ctrl_cb(head->s->cond),
                          ctrl_union(ctrl_comp(ctrl_test(kTrue),
                                               ctrl_cs(head->s->s1)),
                                     ctrl_comp(ctrl_test(kFalse),
                                               ctrl_cs(head->s->s2)))),
                      rest));
          return;
        case Stmt::While:
          out.emplace_back(
              cfg,
              then_do(ctrl_comp(
                          ctrl_cb(head->s->cond),
                          ctrl_comp(ctrl_star(ctrl_comp(
                                        ctrl_test(kTrue),
                                        ctrl_comp(ctrl_cs(head->s->s1),
                                                  ctrl_cb(head->s->cond)))),
                                    ctrl_test(kFalse))),
                      rest));
          return;
      }
      return;
    case Ctrl::Asgn: {
      SmcConfig next = cfg;
      long long n = pop_nat(next, "asgn");
      next.mem[head->id] = n;
      out.emplace_back(std::move(next), rest);
      return;
    }
    case Ctrl::Plus: {
      SmcConfig next = cfg;
      long long n2 = pop_nat(next, "plus");
      long long n1 = pop_nat(next, "plus");
      next.stack.push_back({false, n1 + n2});
      out.emplace_back(std::move(next), rest);
      return;
    }
    case Ctrl::Leq: {
      SmcConfig next = cfg;
      long long n1 = pop_nat(next, "leq");
      long long n2 = pop_nat(next, "leq");
      next.stack.push_back(n1 <= n2 ? kTrue : kFalse);
      out.emplace_back(std::move(next), rest);
      return;
    }
    case Ctrl::Test: {
      SmcConfig next = cfg;
      MachineVal top = pop_any(next, "test");
      if (top == head->v) out.emplace_back(std::move(next), rest);
      // mismatch: the branch blocks (no successors)
      return;
    }
  }
}

// The item a blocked or faulting state got stuck on.
const Ctrl* leftmost_item(const CtrlPtr& c) {
  const Ctrl* p = c.get();
  while (p->kind == Ctrl::Comp) p = p->c1.get();
  return p;
}

}  // namespace

std::vector<std::pair<SmcConfig, CtrlPtr>> smc_step(const SmcConfig& cfg,
                                                    const CtrlPtr& ctrl) {
  std::vector<std::pair<SmcConfig, CtrlPtr>> out;
  step_with(cfg, ctrl, nullptr, out);
  return out;
}

SmcRunResult smc_run(const StmtPtr& program,
                     const std::map<std::string, long long>& initial,
                     int budget) {
  SmcRunResult res;
  SmcConfig start;
  start.mem = initial;

  using State = std::pair<SmcConfig, CtrlPtr>;
  std::deque<State> queue;
  // dedup key: configuration plus printed control
  std::set<std::pair<SmcConfig, std::string>> seen;
  std::set<SmcConfig> finals;
  std::set<SmcConfig> visited;
  std::set<std::pair<SmcConfig, std::string>> blocked;
  std::set<std::string> faults;

  auto push_state = [&](SmcConfig cfg, CtrlPtr ctrl) {
    visited.insert(cfg);
    if (!ctrl) {
      finals.insert(std::move(cfg));
      return;
    }
    auto key = std::make_pair(cfg, print_ctrl(ctrl));
    if (seen.insert(std::move(key)).second)
      queue.emplace_back(std::move(cfg), std::move(ctrl));
  };

  push_state(start, ctrl_cs(program));

  while (!queue.empty()) {
    if (res.steps_used >= budget) {
      res.budget_exceeded = true;
      break;
    }
    auto [cfg, ctrl] = std::move(queue.front());
    queue.pop_front();
    ++res.steps_used;
    try {
      auto succ = smc_step(cfg, ctrl);
      if (succ.empty()) {
        const Ctrl* item = leftmost_item(ctrl);
        blocked.emplace(cfg, item->kind == Ctrl::Test
                                 ? print_ctrl(ctrl_test(item->v))
                                 : print_ctrl(ctrl));
        continue;
      }
      for (auto& [ncfg, nctrl] : succ)
        push_state(std::move(ncfg), std::move(nctrl));
    } catch (const Error& e) {
      faults.insert(std::string(e.what()) + " in " + print_config(cfg));
    }
  }

  res.finals.assign(finals.begin(), finals.end());
  res.visited.assign(visited.begin(), visited.end());
  res.blocked.assign(blocked.begin(), blocked.end());
  res.faults.assign(faults.begin(), faults.end());
  return res;
}

}  // namespace msml::smc
