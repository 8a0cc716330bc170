import json

from malcev.config import config
from malcev.exceptions import MalcevException


class MalcevFormatters:
    '''
    The holder which houses any report formatter registered with the system.
    This object is used in a singleton manner to save and load particular
    named Formatter objects for reference externally.
    '''

    def __init__(self):
        self._formatters = {}

    def register(self, name, formatter):
        self._formatters[name] = formatter

    def find_formatter(self, name):
        if name in self._formatters:
            return self._formatters[name]
        raise MalcevException(f"No report formatter registered for '{name}'")


class TextFormatter:
    """Line-oriented ``KEY: value`` reports."""

    @classmethod
    def translate_str(cls, val):
        return val

    @classmethod
    def translate_none(cls, val):
        return 'none'

    @classmethod
    def translate_int(cls, val):
        return f'{val}'

    @classmethod
    def translate_bool(cls, val):
        return 'yes' if val else 'no'

    @classmethod
    def translate_list(cls, val):
        return ', '.join(cls.translate(v) for v in val)

    @classmethod
    def translate(cls, val):
        """Translate each of the standard report value types"""
        if val is None:
            return cls.translate_none(val)
        elif isinstance(val, str):
            return cls.translate_str(val)
        # Needs to be before integers
        elif isinstance(val, bool):
            return cls.translate_bool(val)
        elif isinstance(val, int):
            return cls.translate_int(val)
        elif isinstance(val, (list, tuple)):
            return cls.translate_list(val)
        # Rational values, elements and subspaces all print themselves
        return cls.translate_str(str(val))

    @classmethod
    def format_line(cls, key, val):
        text = cls.translate(val)
        if '\n' in text:
            body = '\n'.join(f'  {line}' for line in text.rstrip('\n').splitlines())
            return f'{key.upper()}:\n{body}'
        return f'{key.upper()}: {text}'

    @classmethod
    def codify(cls, record):
        return '\n'.join(cls.format_line(key, val) for key, val in record.items()) + '\n'


class JsonFormatter(TextFormatter):
    """The same records as a JSON document with lower-case keys."""

    @classmethod
    def translate(cls, val):
        if val is None or isinstance(val, (str, bool, int)):
            return val
        elif isinstance(val, (list, tuple)):
            return [cls.translate(v) for v in val]
        elif isinstance(val, dict):
            return {k: cls.translate(v) for k, v in val.items()}
        return str(val)

    @classmethod
    def codify(cls, record):
        document = {key.replace(' ', '_'): cls.translate(val) for key, val in record.items()}
        return json.dumps(document, indent=config.json_indent) + '\n'


# Instantiate a MalcevFormatters instance and register Formatters.
malcev_formatters = MalcevFormatters()
malcev_formatters.register("text", TextFormatter)
malcev_formatters.register("json", JsonFormatter)


def render(record, output_format='text'):
    """Render an ordered ``key -> value`` report record."""
    return malcev_formatters.find_formatter(output_format).codify(record)
