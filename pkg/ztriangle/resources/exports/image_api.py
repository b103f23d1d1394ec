import hashlib
import io
import json
import logging
from pathlib import Path
from typing import Any, Iterable

from PIL import Image

from ztriangle.resources.engine_config import EngineConfig
from ztriangle.resources.errors import OrderTooLargeError, UsageError
from ztriangle.resources.render import RasterImage

_logger = logging.getLogger(__name__)

MAX_SVG_SIDE = 256


class ImageAPI:
    def __init__(self, config: EngineConfig):
        self.config = config

    def encode_ppm(self, image: RasterImage) -> bytes:
        """
        Encodes the image as binary PPM (P6, maxval 255).
        :param image: the raster image
        :return: the file content
        """
        buffer = io.BytesIO()
        Image.fromarray(image.pixels.copy()).save(buffer, format='PPM')
        return buffer.getvalue()

    def encode_svg(self, image: RasterImage) -> str:
        """
        Encodes the image as SVG 1.1 with one rect per occupied cell.
        :param image: the raster image, at most 256 cells per side
        :return: the document text
        """
        if image.grid_side > MAX_SVG_SIDE:
            raise OrderTooLargeError(image.grid_side, 1, MAX_SVG_SIDE)
        lines = ['<?xml version="1.0" encoding="UTF-8"?>',
                 f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                 f'width="{image.width}" height="{image.height}" viewBox="0 0 {image.width} {image.height}">',
                 f'<rect x="0" y="0" width="{image.width}" height="{image.height}" fill="#ffffff"/>']
        for cell in image.cells:
            fill = '#{:02x}{:02x}{:02x}'.format(*cell.color)
            stroke = ''
            if cell.framed:
                stroke = ' stroke="#{:02x}{:02x}{:02x}" stroke-width="1"'.format(*(255 - c for c in cell.color))
            lines.append(f'<rect x="{cell.x}" y="{cell.y}" width="{cell.size}" height="{cell.size}" '
                         f'fill="{fill}"{stroke}/>')
        lines.append('</svg>')
        return '\n'.join(lines) + '\n'

    def sidecar(self, operation: str, parameters: dict[str, Any], content: bytes) -> str:
        record = {'operation': operation,
                  'parameters': parameters,
                  'palette_seed': self.config.palette_seed,
                  'content_hash': 'sha256:' + hashlib.sha256(content).hexdigest()}
        return json.dumps(record, indent=2, sort_keys=True) + '\n'

    def save(self,
             image: RasterImage,
             out: Path,
             operation: str,
             parameters: dict[str, Any],
             formats: Iterable[str] = ('ppm',)) -> list[Path]:
        """
        Writes the PPM file (always), the SVG file if requested, and a sidecar JSON describing the run
        :param image: the raster image
        :param out: output path, its suffix is replaced per format
        :param operation: name of the render operation
        :param parameters: parameters of the render operation
        :param formats: requested formats among 'ppm' and 'svg'
        :return: the written paths
        """
        formats = set(formats)
        unknown = formats - {'ppm', 'svg'}
        if unknown:
            raise UsageError(f"Unknown image formats {sorted(unknown)}.")
        out.parent.mkdir(parents=True, exist_ok=True)

        ppm = self.encode_ppm(image)
        ppm_path = out.with_suffix('.ppm')
        ppm_path.write_bytes(ppm)
        written = [ppm_path]

        if 'svg' in formats:
            svg_path = out.with_suffix('.svg')
            svg_path.write_text(self.encode_svg(image), encoding='utf-8')
            written.append(svg_path)

        sidecar_path = out.with_suffix('.json')
        sidecar_path.write_text(self.sidecar(operation, parameters, ppm), encoding='utf-8')
        written.append(sidecar_path)
        _logger.info("Saving %s image to %s...success", operation, ppm_path)
        return written
