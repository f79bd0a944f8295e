from pathlib import Path
from typing import Callable, Dict, List, Tuple, TypeVar

from accsr.config import ConfigProviderBase, ConfigurationBase

package_dir = Path(__file__).parent.absolute()

T = TypeVar("T")


def parse_int_rows(text: str) -> List[Tuple[int, ...]]:
    """Parse ``"2,-1;1,1"`` into ``[(2, -1), (1, 1)]``."""
    rows = []
    for chunk in str(text).split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append(tuple(int(entry) for entry in chunk.split(",")))
        except ValueError:
            raise ValueError(f"Cannot parse integer row {chunk!r} in {text!r}")
    if not rows:
        raise ValueError(f"No rows found in {text!r}")
    return rows


def parse_int_list(text: str) -> List[int]:
    return [int(entry) for entry in str(text).split(",") if entry.strip()]


class __Configuration(ConfigurationBase):
    @property
    def base_matrix(self) -> List[Tuple[int, ...]]:
        return parse_int_rows(self._get_non_empty_entry("order")["base_matrix"])

    @property
    def generator_names(self) -> Dict[Tuple[int, ...], str]:
        names = self._get_non_empty_entry("generator_names")
        return {tuple(parse_int_list(key)): value for key, value in names.items()}

    @property
    def buchberger_steps(self) -> int:
        return int(self._get_non_empty_entry("budgets")["buchberger_steps"])

    @property
    def sweep_steps(self) -> int:
        return int(self._get_non_empty_entry("budgets")["sweep_steps"])

    @property
    def a3_nmax(self) -> int:
        return int(self._get_non_empty_entry("a3")["nmax"])

    @property
    def a3_nmax_cap(self) -> int:
        return int(self._get_non_empty_entry("a3")["nmax_cap"])

    @property
    def a3_fan_check_nmax(self) -> int:
        return int(self._get_non_empty_entry("a3")["fan_check_nmax"])

    @property
    def a3_primes(self) -> List[int]:
        return parse_int_list(self._get_non_empty_entry("a3")["primes"])

    @property
    def log_level(self) -> str:
        return str(self._get_non_empty_entry("logging")["level"])

    @property
    def corpus(self) -> Dict[str, int]:
        return {key: int(value) for key, value in self._get_non_empty_entry("corpus").items()}


class ConfigProvider(ConfigProviderBase[__Configuration]):
    pass


_config_provider = ConfigProvider()


def get_config(reload=False, ignore_local=False) -> __Configuration:
    """
    :param ignore_local: if True, the local configuration file will be ignored.
        The command line sets this so that reported runs only depend on the packaged defaults and flags.
    :param reload: if True, the configuration will be reloaded from the yml files
    :return: the configuration instance
    """
    config_files = ["config.yml"]
    if not ignore_local:
        config_files.append("config_local.yml")
    return _config_provider.get_config(
        config_directory=package_dir,
        config_files=config_files,
        reload=reload,
    )


def call_with_config(ignore_local: bool, function: Callable[..., T], *args) -> T:
    """
    Load the configuration in the current process, then call ``function``. Worker processes start with
    an empty configuration cache, so parallel tasks are wrapped in this to honor ``ignore_local``.
    """
    get_config(reload=True, ignore_local=ignore_local)
    return function(*args)
