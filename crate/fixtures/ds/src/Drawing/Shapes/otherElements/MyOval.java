package Drawing.Shapes.otherElements;

import java.awt.Color;
import java.awt.Graphics;

import Drawing.Shapes.coreElements.MyShape;

// an oval bounded by the two corner points; the oval fills the box
// between them, so dragging the second point resizes the oval
public class MyOval extends MyShape {
    // no-argument constructor: an empty oval at the origin
    public MyOval() {
        super();
    }

    // constructor with input values
    public MyOval(int x1, int y1, int x2, int y2, Color shapeColor) {
        super(x1, y1, x2, y2, shapeColor);
    }

    // render an oval inside the bounding box of the two points
    public void draw(Graphics g) {
        int left = Math.min(this.X1, this.X2);
        int top = Math.min(this.Y1, this.Y2);
        int width = Math.abs(this.X1 - this.X2);
        int height = Math.abs(this.Y1 - this.Y2);
        g.setColor(getColor());
        g.drawOval(left, top, width, height);
    }
}
