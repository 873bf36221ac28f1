import json
import os
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional

import jinja2
import yaml
from pydantic import ValidationError

from padix.constants import CONF_PATH, CONFIG_EXTENSIONS, CONFIG_FILE_STEM
from padix.errors import ConfigError
from padix.models.job import JobConfig
from padix.utils import padix_echo
from padix.utils.json import JsonUtils


class _AbstractConfigReader(ABC):
    def __init__(self, path: Path):
        self._path = path
        self.config = self._get_config()

    def _get_config(self) -> Dict[str, Any]:
        content = self._read_file()
        if not isinstance(content, dict):
            raise ConfigError(f"Job configuration {self._path} shall contain a mapping at the top level")
        return content

    @abstractmethod
    def _read_file(self) -> Dict[str, Any]:
        """"""


class _YamlConfigReader(_AbstractConfigReader):
    def _read_file(self) -> Dict[str, Any]:
        return yaml.load(self._path.read_text(encoding="utf-8"), yaml.SafeLoader)


class _JsonConfigReader(_AbstractConfigReader):
    def _read_file(self) -> Dict[str, Any]:
        return JsonUtils.read(self._path)


class _Jinja2ConfigReader(_AbstractConfigReader):
    def __init__(self, path: Path, ext: str, jinja_vars_file: Optional[Path]):
        self._ext = ext
        self._jinja_vars_file = jinja_vars_file
        super().__init__(path)

    @staticmethod
    def _read_vars_file(file_path: Path) -> Dict[str, Any]:
        return yaml.load(file_path.read_text(encoding="utf-8"), yaml.SafeLoader)

    def _read_file(self) -> Dict[str, Any]:
        abs_parent_path = self._path.parent.absolute()
        file_name = self._path.name
        padix_echo(f"Rendering the Jinja2 template {file_name} from {abs_parent_path}")
        env = jinja2.Environment(loader=jinja2.FileSystemLoader(abs_parent_path))
        _var = {} if not self._jinja_vars_file else self._read_vars_file(self._jinja_vars_file)
        rendered = env.get_template(file_name).render(env=os.environ, var=_var)
        if self._ext == ".json":
            return json.loads(rendered)
        return yaml.load(rendered, yaml.SafeLoader)


class ConfigReader:
    """
    Entrypoint for reading job configurations from files.

    The reader is chosen by the file extension; :code:`get_job` validates the raw content into a :code:`JobConfig`.
    """

    def __init__(self, path: Optional[Path] = None, jinja_vars_file: Optional[Path] = None):
        self._jinja_vars_file = jinja_vars_file
        self._path = self._verify_config_file(path) if path else self._find_config_file()
        self._reader = self._define_reader()

    @property
    def path(self) -> Path:
        return self._path

    @staticmethod
    def _verify_config_file(candidate: Path) -> Path:
        if not candidate.suffixes:
            raise ConfigError(f"Job configuration file {candidate} has no extension")
        file_extension = candidate.suffixes[-1]

        if file_extension == ".j2" and len(candidate.suffixes) > 1:
            file_extension = candidate.suffixes[-2]
        if file_extension not in [".json", ".yaml", ".yml"]:
            raise ConfigError(
                f"Job configuration file should have one of these extensions: {', '.join(CONFIG_EXTENSIONS)}"
            )

        if not candidate.exists():
            raise ConfigError(f"Job configuration file {candidate} does not exist")

        padix_echo(f"Using the provided job configuration {candidate}")
        return candidate

    @staticmethod
    def _find_config_file() -> Path:
        for ext in CONFIG_EXTENSIONS:
            candidate = CONF_PATH / f"{CONFIG_FILE_STEM}.{ext}"
            if candidate.exists():
                padix_echo(f"Auto-discovery found job configuration {candidate}")
                return candidate

        raise ConfigError(
            f"Auto-discovery was unable to find any job configuration in the {CONF_PATH} directory. "
            "Please provide the file name via --config option"
        )

    def _define_reader(self) -> _AbstractConfigReader:
        suffixes = self._path.suffixes[-2:]
        if len(suffixes) > 1 and suffixes[-1] == ".j2":
            return _Jinja2ConfigReader(self._path, ext=suffixes[0], jinja_vars_file=self._jinja_vars_file)

        if self._jinja_vars_file:
            raise ConfigError("Jinja variables file is provided, but the job configuration is not a Jinja2 template")

        if suffixes[-1] == ".json":
            return _JsonConfigReader(self._path)
        return _YamlConfigReader(self._path)

    def get_config(self) -> Dict[str, Any]:
        return self._reader.config

    def get_job(self, p: Optional[int] = None, M: Optional[int] = None) -> JobConfig:
        """Validates the configuration, the command-line values of p and M taking precedence."""
        content = dict(self.get_config())
        if p is not None:
            content["p"] = p
        if M is not None:
            content["M"] = M
        try:
            return JobConfig(**content)
        except ValidationError as e:
            details = "; ".join(
                f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in e.errors()
            )
            raise ConfigError(f"Invalid job configuration {self._path}: {details}") from e
