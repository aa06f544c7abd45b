"""
Модели конечных полей: башня F_p ⊂ F_q ⊂ F_q(δ^{1/3}).

Элементы хранятся целочисленными кодами:
- F_q: код = Σ c_i p^i, где c_i суть коэффициенты многочлена (младшие первыми);
  F_p вкладывается тождественно (коды 0..p-1);
- F_{q³}: код = a1 + a2·q + a3·q² в базисе {1, t, t²}, t = δ^{1/3};
  F_q вкладывается тождественно (a2 = a3 = 0).
"""
import enum
from typing import Callable, List, NamedTuple, Optional, Tuple


class FieldLevel(str, enum.Enum):
    """Уровни башни полей."""
    FP = "Fp"
    FQ = "Fq"
    FQ3 = "Fq3"


class FieldElem(NamedTuple):
    """Элемент башни в координатах над уровнем ниже."""
    level: FieldLevel
    coords: Tuple[int, ...]


class MultChar(NamedTuple):
    """Мультипликативный характер циклической группы порядка modulus: g^k ↦ ζ^{exponent·k}."""
    modulus: int
    exponent: int


class FieldCtx:
    """
    Контекст поля F_q с таблицами логарифмов.

    После построения не изменяется; build_cubic_tower возвращает новый
    контекст с таблицами верхнего уровня F_{q³}.
    """

    ADD_TABLE_LIMIT = 256

    def __init__(
        self,
        p: int,
        n: int,
        poly: Tuple[int, ...],
        generator: int,
        exp_table: List[int],
        log_table: List[int],
    ):
        self.p = p
        self.n = n
        self.q = p ** n
        self.poly = poly
        self.generator = generator
        self._exp = exp_table
        self._log = log_table
        self.order = self.q - 1

        # Кубическое расширение (заполняется build_cubic_tower)
        self.delta: Optional[int] = None
        self.top_generator: Optional[int] = None
        self._t_exp: List[int] = []
        self._t_log: List[int] = []

        self.add: Callable[[int, int], int]
        self.sub: Callable[[int, int], int]
        if n == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
        elif p == 2:
            self.add = lambda a, b: a ^ b
            self.sub = lambda a, b: a ^ b
        elif self.q <= self.ADD_TABLE_LIMIT:
            add_table = [[self._add_digits(a, b) for b in range(self.q)] for a in range(self.q)]
            sub_table = [[self._add_digits(a, self._neg_digits(b)) for b in range(self.q)] for a in range(self.q)]
            self.add = lambda a, b: add_table[a][b]
            self.sub = lambda a, b: sub_table[a][b]
        else:
            self.add = self._add_digits
            self.sub = lambda a, b: self._add_digits(a, self._neg_digits(b))

    # --- координаты ---

    def digits(self, a: int) -> Tuple[int, ...]:
        """Коэффициенты многочлена элемента F_q (младшие первыми)."""
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_digits(self, ds) -> int:
        code = 0
        for d in reversed(tuple(ds)):
            code = code * self.p + (d % self.p)
        return code

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        code, scale = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            code += ((ra + rb) % p) * scale
            scale *= p
        return code

    def _neg_digits(self, a: int) -> int:
        return self.from_digits(-d for d in self.digits(a))

    # --- арифметика F_q ---

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(-self._log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % self.order]

    def log(self, a: int) -> int:
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self.order]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def order_key(self, a: int) -> int:
        """Порядок на F_q: ноль первым, далее по показателю генератора."""
        return 0 if a == 0 else 1 + self._log[a]

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def in_subfield(self, a: int, k: int) -> bool:
        """a ∈ F_{p^k} ⊂ F_q (k | n)."""
        if a == 0:
            return True
        return self._log[a] % ((self.q - 1) // (self.p ** k - 1)) == 0

    def subfield_elements(self, k: int) -> List[int]:
        return [a for a in self.elements() if self.in_subfield(a, k)]

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def is_cube(self, a: int) -> bool:
        if a == 0:
            return True
        return self._log[a] % 3 == 0 if self.order % 3 == 0 else True

    # --- верхний уровень F_{q³} ---

    @property
    def has_tower(self) -> bool:
        return self.delta is not None

    @property
    def top_size(self) -> int:
        return self.q ** 3

    def t_split(self, x: int) -> Tuple[int, int, int]:
        q = self.q
        return x % q, (x // q) % q, x // (q * q)

    def t_join(self, a1: int, a2: int, a3: int) -> int:
        return a1 + self.q * (a2 + self.q * a3)

    def t_add(self, x: int, y: int) -> int:
        a1, a2, a3 = self.t_split(x)
        b1, b2, b3 = self.t_split(y)
        return self.t_join(self.add(a1, b1), self.add(a2, b2), self.add(a3, b3))

    def t_sub(self, x: int, y: int) -> int:
        a1, a2, a3 = self.t_split(x)
        b1, b2, b3 = self.t_split(y)
        return self.t_join(self.sub(a1, b1), self.sub(a2, b2), self.sub(a3, b3))

    def t_neg(self, x: int) -> int:
        return self.t_sub(0, x)

    def t_mul_schoolbook(self, x: int, y: int) -> int:
        """Умножение по формулам базиса с t³ = δ (используется для построения таблиц)."""
        a1, a2, a3 = self.t_split(x)
        b1, b2, b3 = self.t_split(y)
        add, mul, d = self.add, self.mul, self.delta
        c1 = add(mul(a1, b1), mul(d, add(mul(a2, b3), mul(a3, b2))))
        c2 = add(add(mul(a1, b2), mul(a2, b1)), mul(d, mul(a3, b3)))
        c3 = add(add(mul(a1, b3), mul(a2, b2)), mul(a3, b1))
        return self.t_join(c1, c2, c3)

    def t_mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._t_exp[(self._t_log[x] + self._t_log[y]) % (self.top_size - 1)]

    def t_inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._t_exp[(-self._t_log[x]) % (self.top_size - 1)]

    def t_div(self, x: int, y: int) -> int:
        return self.t_mul(x, self.t_inv(y))

    def t_pow(self, x: int, k: int) -> int:
        if x == 0:
            return 1 if k == 0 else 0
        return self._t_exp[(self._t_log[x] * k) % (self.top_size - 1)]

    def t_log(self, x: int) -> int:
        return self._t_log[x]

    def t_frobenius(self, x: int) -> int:
        """x ↦ x^q на F_{q³}."""
        return self.t_pow(x, self.q)

    def t_order_key(self, x: int) -> int:
        return 0 if x == 0 else 1 + self._t_log[x]

    def t_in_subfield(self, x: int, k: int) -> bool:
        """x ∈ F_{p^k} ⊂ F_{q³} (k | 3n)."""
        if x == 0:
            return True
        return self._t_log[x] % ((self.top_size - 1) // (self.p ** k - 1)) == 0

    # --- FieldElem ---

    def to_elem(self, code: int, level: FieldLevel) -> FieldElem:
        if level == FieldLevel.FP:
            return FieldElem(level, (code,))
        if level == FieldLevel.FQ:
            return FieldElem(level, self.digits(code))
        return FieldElem(level, self.t_split(code))

    def from_elem(self, elem: FieldElem) -> int:
        if elem.level == FieldLevel.FP:
            return elem.coords[0] % self.p
        if elem.level == FieldLevel.FQ:
            return self.from_digits(elem.coords)
        return self.t_join(*elem.coords)

    def header(self) -> dict:
        """Описание поля для заголовка отчета."""
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "poly": list(self.poly),
            "generator": list(self.digits(self.generator)),
            "delta": list(self.digits(self.delta)) if self.delta is not None else None,
        }

    def __repr__(self):
        return f"<FieldCtx(p={self.p}, n={self.n}, poly={self.poly}, delta={self.delta})>"
