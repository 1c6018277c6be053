"""
Модуль распознавания про-изоморфизмов и сборки факторизаций.

Включает в себя:
- FactorizationWitness / ProIsoCertificate: сертификат взаимной факторизации
- FactorizationSearch: ограниченный окном поиск с хвостовыми доказательствами
- is_pro_isomorphism / compose_certificates: точки входа
- Assembly / assemble_factorizations: сборка башни из факторизаций связок
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, NamedTuple, Optional, Tuple

from app.core.exceptions import (MissingFactorizationError,
                                 NonCommutingSquareError)
from app.schemas.v1.verdicts import Scope, TailKind, Verdict
from app.services.v1.abelian import TailRule
from app.services.v1.base import WindowedService

from .homs import tower_invariants
from .maps import ProMap, reindex
from .theories import Constraint
from .towers import Reindex, Tower, reindexed_tail


@dataclass(frozen=True)
class FactorizationWitness:
    """
    Морфизм g: Y_t → X_{θ(s)} с f_s ∘ g = bond_Y(t → s) и
    g ∘ f_t = bond_X(θ(t) → θ(s)).

    Attributes:
        level (int): s
        index (int): t ≥ s
        morphism (Any): g
    """

    level: int
    index: int
    morphism: Any = field(compare=False, repr=False)

    def to_dict(self) -> dict:
        return {"level": self.level, "index": self.index}


@dataclass(frozen=True)
class ProIsoCertificate:
    """
    Итог проверки про-изоморфизма.

    Attributes:
        verdict (Verdict): certified / refuted / unknown
        scope (Scope): Чем закрыт вердикт
        witnesses (Tuple[FactorizationWitness, ...]): Проверенные диаграммы
        locus (Optional[int]): Первый уровень без факторизации
        reason (str): Описание доказательства или неудачи
    """

    verdict: Verdict
    scope: Scope
    witnesses: Tuple[FactorizationWitness, ...] = ()
    locus: Optional[int] = None
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict == Verdict.CERTIFIED

    def witness(self, s: int) -> Optional[FactorizationWitness]:
        for item in self.witnesses:
            if item.level == s:
                return item
        return None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "scope": self.scope.value,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "locus": self.locus,
            "reason": self.reason,
        }


class TailPlan(NamedTuple):
    """
    Общее хвостовое правило данных (X_{θ(s)}, Y_s, f_s).
    """

    start: int
    period: int
    shift: int
    exhaustive: bool

    def rule(self) -> TailRule:
        """
        Правило для башен, построенных поуровнево из f_s.
        """
        if self.exhaustive:
            return TailRule.constant(self.start)
        return TailRule.periodic(self.start, self.period, self.shift)


class Assembly(NamedTuple):
    """
    Собранная башня W_j = Z_{t_j s_j} и ее про-изоморфизм с Y.

    Attributes:
        tower: W
        projection: p: W → Y', где Y'_j = Y_{s_j}
        certificate: Сертификат для p
        chain: Пары (t_j, s_j)
    """

    tower: Tower
    projection: ProMap
    certificate: ProIsoCertificate
    chain: Tuple[Tuple[int, int], ...]


class FactorizationSearch(WindowedService):
    """
    Поиск взаимных факторизаций для морфизмов башен.

    Для каждого s ищется t ≥ s и g: Y_t → X_{θ(s)}, замыкающие обе
    диаграммы. Если у X, Y и компонент есть общее хвостовое правило,
    проверки базовых уровней правила хватает для всех s; у постоянного
    правила перебор t к тому же исчерпывающий, и неудача опровергает.
    """

    def commutes(self, f: ProMap, s: int, t: int, g: Any) -> bool:
        theory = f.theory
        theta = f.reindex
        upper = theory.equal(
            theory.compose(f.component(s), g), f.target.composite(t, s)
        )
        return upper and theory.equal(
            theory.compose(g, f.component(t)),
            f.source.composite(theta(t), theta(s)),
        )

    def solve_at(self, f: ProMap, s: int, t: int) -> Optional[Any]:
        theta = f.reindex
        return f.theory.solve(
            f.target.level(t),
            f.source.level(theta(s)),
            [
                Constraint(f.target.composite(t, s), left=f.component(s)),
                Constraint(
                    f.source.composite(theta(t), theta(s)), right=f.component(t)
                ),
            ],
        )

    def tail_plan(self, f: ProMap) -> Optional[TailPlan]:
        """
        Общее хвостовое правило данных (X_{θ(s)}, Y_s, f_s).
        """
        pulled = reindexed_tail(f.source.tail, f.reindex)
        target_tail = f.target.tail
        if pulled is None or target_tail is None:
            return None
        combined = pulled.combine(target_tail)
        if combined is None:
            return None
        kinds = (pulled.kind, target_tail.kind)
        if TailKind.EVENTUALLY_ZERO not in kinds:
            if f.tail is None:
                return None
            combined = combined.combine(f.tail)
            if combined is None:
                return None
        exhaustive = combined.kind != TailKind.PERIODIC_SHIFT
        if combined.is_periodic:
            return TailPlan(combined.start, combined.period, combined.shift, exhaustive)
        return TailPlan(combined.start, 1, 0, exhaustive)

    def _available(self, f: ProMap, t: int) -> bool:
        return f.target.available(t) and f.source.available(f.reindex(t))

    def find_witness(
        self, f: ProMap, s: int, plan: Optional[TailPlan]
    ) -> Optional[FactorizationWitness]:
        if plan is not None and plan.exhaustive:
            last = max(s, plan.start)
        else:
            last = s + self.search_depth
        for t in range(s, last + 1):
            if not self._available(f, t):
                break
            g = self.solve_at(f, s, t)
            if g is not None:
                return FactorizationWitness(s, t, g)
        return None

    def is_pro_isomorphism(self, f: ProMap) -> ProIsoCertificate:
        """
        Проверяет, что f является про-изоморфизмом.

        Returns:
            ProIsoCertificate: certified (window- или tail-proven),
            refuted (исчерпан постоянный хвост или не совпали lim и lim¹)
            или unknown с уровнем неудачи
        """
        plan = self.tail_plan(f)
        if plan is None:
            top = min(f.window, self.window)
        else:
            top = plan.start + plan.period - 1
        witnesses = []
        locus = None
        for s in range(top + 1):
            witness = self.find_witness(f, s, plan)
            if witness is None:
                locus = s
                break
            witnesses.append(witness)
        witnesses_tuple = tuple(witnesses)

        if locus is None:
            scope = Scope.WINDOW if plan is None else Scope.TAIL
            reason = (
                f"факторизации на уровнях 0..{top}"
                if plan is None
                else f"базовые уровни хвоста с {plan.start}, период {plan.period}"
            )
            certificate = ProIsoCertificate(
                Verdict.CERTIFIED, scope, witnesses_tuple, None, reason
            )
        elif plan is not None and plan.exhaustive:
            certificate = ProIsoCertificate(
                Verdict.REFUTED,
                Scope.TAIL,
                witnesses_tuple,
                locus,
                f"постоянный хвост с {plan.start} исчерпан на уровне {locus}",
            )
        else:
            certificate = self._invariant_check(f, witnesses_tuple, locus)
        self.log_verdict("is_pro_isomorphism", certificate.verdict, certificate.scope)
        return certificate

    def _invariant_check(
        self, f: ProMap, witnesses: Tuple[FactorizationWitness, ...], locus: int
    ) -> ProIsoCertificate:
        degrees = self._degrees(f)
        source = tower_invariants(f.source, degrees)
        target = tower_invariants(f.target, degrees)
        for k in sorted(set(source) & set(target)):
            if source[k] != target[k]:
                self.logger.debug("инварианты расходятся в степени %s", k)
                return ProIsoCertificate(
                    Verdict.REFUTED,
                    Scope.TAIL,
                    witnesses,
                    locus,
                    f"lim/lim¹ различаются (степень {k}): {source[k]} ≠ {target[k]}",
                )
        return ProIsoCertificate(
            Verdict.UNKNOWN,
            Scope.WINDOW,
            witnesses,
            locus,
            f"нет факторизации для уровня {locus} в пределах окна",
        )

    def _degrees(self, f: ProMap) -> range:
        theory = f.theory
        spans = []
        for s in range(max(f.window, 0) + 1):
            for X in (f.target.level(s), f.source.level(f.reindex(s))):
                span = theory.degree_range(X)
                if span is not None:
                    spans.append(span)
        if not spans:
            return range(0)
        return range(min(a for a, _ in spans), max(b for _, b in spans) + 1)

    def compose(
        self,
        f: ProMap,
        first: ProIsoCertificate,
        g: ProMap,
        second: ProIsoCertificate,
    ) -> Tuple[ProMap, ProIsoCertificate]:
        """
        Сертификат для g ∘ f по сертификатам f: X → Y и g: Y → W.

        На уровне s: γ из second на s, φ из first на θ_g(s), γ' из second
        на s' с θ_g(s') ≥ индекса φ; k = φ ∘ bond_Y ∘ γ'.
        """
        h = g @ f
        theory = h.theory
        witnesses = []
        locus = None
        for gamma in second.witnesses:
            s = gamma.level
            sigma = g.reindex(s)
            phi = first.witness(sigma)
            if phi is None:
                locus = s
                break
            later = max(s, g.reindex.first_reaching(phi.index))
            gamma_later = second.witness(later)
            if gamma_later is None:
                locus = s
                break
            k = theory.compose(
                phi.morphism,
                theory.compose(
                    g.source.composite(g.reindex(later), phi.index),
                    gamma_later.morphism,
                ),
            )
            if not self.commutes(h, s, gamma_later.index, k):
                raise NonCommutingSquareError(f"composite certificate at {s}")
            witnesses.append(FactorizationWitness(s, gamma_later.index, k))
        verdict = first.verdict.meet(second.verdict)
        if verdict == Verdict.CERTIFIED and not witnesses:
            verdict = Verdict.UNKNOWN
        certificate = ProIsoCertificate(
            verdict,
            first.scope.meet(second.scope),
            tuple(witnesses),
            locus,
            "композиция сертификатов",
        )
        self.log_verdict("compose_certificates", certificate.verdict, certificate.scope)
        return h, certificate

    def assemble(
        self,
        Y: Tower,
        factorization: Callable[[int, int], Optional[Tuple[Any, Any, Any]]],
    ) -> Assembly:
        """
        Сборка башни из факторизаций Y_t → Z_{ts} → Y_s связок.

        Пары (t_j, s_j) идут по кофинальной цепочке s_{j+1} = t_j,
        t_j это наименьшее t > s_j с факторизацией. Связка
        W_{j+1} → W_j равна i_j ∘ p_{j+1}.

        Raises:
            MissingFactorizationError: Для s_j нет факторизации в окне
            NonCommutingSquareError: p ∘ i не равна связке Y
        """
        theory = Y.theory
        chain = []
        pieces = []
        s = 0
        while s <= Y.window:
            found = None
            for t in range(s + 1, s + self.search_depth + 1):
                if not Y.available(t):
                    break
                found = factorization(t, s)
                if found is not None:
                    break
            if found is None:
                if chain:
                    break
                raise MissingFactorizationError(s)
            Z, i, p = found
            if not theory.equal(theory.compose(p, i), Y.composite(t, s)):
                raise NonCommutingSquareError(f"factorization ({t}, {s})")
            chain.append((t, s))
            pieces.append((Z, i, p))
            s = t
        if len(pieces) < 2:
            raise MissingFactorizationError(s)

        levels = tuple(Z for Z, _, _ in pieces)
        bonds = tuple(
            theory.compose(pieces[j][1], pieces[j + 1][2])
            for j in range(len(pieces) - 1)
        )
        W = Tower.from_levels(
            levels, bonds, name=f"assembled {Y.name}".strip(), theory=theory
        )
        Y_chain, _ = reindex(Y, Reindex.from_table(tuple(s for _, s in chain)))
        projection = ProMap(
            W,
            Y_chain,
            lambda j: pieces[j][2],
            name="assembly projection",
            window=len(pieces) - 1,
        )
        witnesses = []
        for j in range(len(pieces) - 1):
            witness = FactorizationWitness(j, j + 1, pieces[j][1])
            if not self.commutes(projection, j, j + 1, witness.morphism):
                raise NonCommutingSquareError(f"assembly at {j}")
            witnesses.append(witness)
        certificate = ProIsoCertificate(
            Verdict.CERTIFIED,
            Scope.WINDOW,
            tuple(witnesses),
            None,
            f"сборка по цепочке длины {len(chain)}",
        )
        self.log_verdict(
            "assemble_factorizations", certificate.verdict, certificate.scope
        )
        return Assembly(W, projection, certificate, tuple(chain))


def is_pro_isomorphism(
    f: ProMap, window: Optional[int] = None, search_depth: Optional[int] = None
) -> ProIsoCertificate:
    """
    Проверка про-изоморфизма взаимной факторизацией.

    Example:
        >>> from app.services.v1.complexes import sphere
        >>> from .towers import constant
        >>> is_pro_isomorphism(ProMap.identity(constant(sphere(0)))).verdict.value
        'certified'
    """
    return FactorizationSearch(window, search_depth).is_pro_isomorphism(f)


def compose_certificates(
    f: ProMap, first: ProIsoCertificate, g: ProMap, second: ProIsoCertificate
) -> Tuple[ProMap, ProIsoCertificate]:
    return FactorizationSearch().compose(f, first, g, second)


def assemble_factorizations(
    Y: Tower,
    factorization: Callable[[int, int], Optional[Tuple[Any, Any, Any]]],
    search_depth: Optional[int] = None,
) -> Assembly:
    """
    Сборка про-объекта, изоморфного Y, из факторизаций его связок.
    """
    return FactorizationSearch(search_depth=search_depth).assemble(Y, factorization)
